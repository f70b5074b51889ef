//! Finite powers `C_k^I` of the chain `0 < 1 < ... < k-1`.

use crate::order::QuasiOrder;
use crate::subset::Subset;

/// The product of `dims` copies of the `k`-element chain under the
/// coordinatewise order. Vectors are encoded little-endian in base `k`, so
/// coordinate 0 is the least significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainProduct {
    k: usize,
    dims: usize,
}

impl ChainProduct {
    pub fn new(k: usize, dims: usize) -> Self {
        assert!(k >= 1, "chains need at least one element");
        assert!(
            (k as u128).pow(dims as u32) <= 1 << 20,
            "chain product too large"
        );
        ChainProduct { k, dims }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn size(&self) -> usize {
        self.k.pow(self.dims as u32)
    }

    pub fn encode(&self, v: &[usize]) -> usize {
        assert_eq!(v.len(), self.dims);
        v.iter().rev().fold(0, |acc, &x| {
            assert!(x < self.k, "coordinate {x} exceeds chain length {}", self.k);
            acc * self.k + x
        })
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.dims);
        for _ in 0..self.dims {
            v.push(code % self.k);
            code /= self.k;
        }
        v
    }

    pub fn order(&self) -> QuasiOrder {
        let vecs: Vec<Vec<usize>> = (0..self.size()).map(|c| self.decode(c)).collect();
        QuasiOrder::from_relation(self.size(), |p, q| {
            vecs[p].iter().zip(&vecs[q]).all(|(a, b)| a <= b)
        })
        .expect("coordinatewise order is an order")
    }

    /// `ξ·χ_i`: value `xi` at coordinate `i`, zero elsewhere.
    pub fn scaled_unit(&self, i: usize, xi: usize) -> usize {
        let mut v = vec![0; self.dims];
        v[i] = xi;
        self.encode(&v)
    }

    /// All `ξ·χ_i` with `ξ >= 1`.
    pub fn scaled_units(&self) -> Subset {
        let mut s = Subset::empty(self.size());
        for i in 0..self.dims {
            for xi in 1..self.k {
                s.insert(self.scaled_unit(i, xi));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_roundtrip() {
        let c = ChainProduct::new(3, 4);
        for code in 0..c.size() {
            assert_eq!(c.encode(&c.decode(code)), code);
        }
        assert_eq!(c.decode(5), vec![2, 1, 0, 0]);
    }

    #[test]
    fn c2_squared_is_the_four_element_boolean_algebra() {
        let o = ChainProduct::new(2, 2).order();
        assert_eq!(o.atoms().to_vec(), vec![1, 2]);
        assert!(o.leq(1, 3) && o.leq(2, 3) && !o.comparable(1, 2));
    }

    #[test]
    fn atoms_of_products_are_scaled_units() {
        for (k, d) in [(2, 3), (3, 2), (4, 2)] {
            let c = ChainProduct::new(k, d);
            assert_eq!(c.order().atoms(), c.scaled_units(), "k={k} d={d}");
        }
    }
}
