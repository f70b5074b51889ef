//! Brute-force reference implementations for the integration tests.
//!
//! Everything here works on a plain boolean relation matrix and repeats the
//! definitions directly, without calling into the library beyond reading
//! `leq` off a `QuasiOrder`.

#![allow(dead_code)]

use latkit::QuasiOrder;

pub type Rel = Vec<Vec<bool>>;

pub fn rel(o: &QuasiOrder) -> Rel {
    (0..o.size()).map(|p| (0..o.size()).map(|q| o.leq(p, q)).collect()).collect()
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn upper_bounds(r: &Rel, set: &[usize]) -> Vec<usize> {
    (0..r.len()).filter(|&u| set.iter().all(|&a| r[a][u])).collect()
}

pub fn lower_bounds(r: &Rel, set: &[usize]) -> Vec<usize> {
    (0..r.len()).filter(|&u| set.iter().all(|&a| r[u][a])).collect()
}

pub fn least(r: &Rel, cands: &[usize]) -> Option<usize> {
    cands.iter().copied().find(|&u| cands.iter().all(|&v| r[u][v]))
}

pub fn greatest(r: &Rel, cands: &[usize]) -> Option<usize> {
    cands.iter().copied().find(|&u| cands.iter().all(|&v| r[v][u]))
}

pub fn sup(r: &Rel, set: &[usize]) -> Option<usize> {
    least(r, &upper_bounds(r, set))
}

pub fn inf(r: &Rel, set: &[usize]) -> Option<usize> {
    greatest(r, &lower_bounds(r, set))
}

pub fn is_lattice(r: &Rel) -> bool {
    let n = r.len();
    n > 0 && (0..n).all(|p| (0..n).all(|q| sup(r, &[p, q]).is_some() && inf(r, &[p, q]).is_some()))
}

pub fn is_embedding(rp: &Rel, rq: &Rel, img: &[usize]) -> bool {
    (0..rp.len()).all(|p| (0..rp.len()).all(|q| rp[p][q] == rq[img[p]][img[q]]))
}

pub fn is_monotone(rp: &Rel, rq: &Rel, img: &[usize]) -> bool {
    (0..rp.len()).all(|p| (0..rp.len()).all(|q| !rp[p][q] || rq[img[p]][img[q]]))
}

pub fn is_convex(r: &Rel, inside: &[bool]) -> bool {
    let n = r.len();
    (0..n).all(|p| {
        !inside[p]
            || (0..n).all(|q| !inside[q] || (0..n).all(|x| !(r[p][x] && r[x][q]) || inside[x]))
    })
}

/// Nonempty `B ⊆ A` whose supremum computed inside `A` exists must have the
/// same supremum in the ambient order; dually for infima.
pub fn is_preregular(r: &Rel, inside: &[bool]) -> bool {
    let a: Vec<usize> = (0..r.len()).filter(|&i| inside[i]).collect();
    for mask in 1u64..1 << a.len() {
        let b: Vec<usize> = members(mask, a.len()).into_iter().map(|i| a[i]).collect();
        let ub_in: Vec<usize> = upper_bounds(r, &b).into_iter().filter(|&u| inside[u]).collect();
        if let Some(s) = least(r, &ub_in) {
            if sup(r, &b) != Some(s) {
                return false;
            }
        }
        let lb_in: Vec<usize> = lower_bounds(r, &b).into_iter().filter(|&u| inside[u]).collect();
        if let Some(s) = greatest(r, &lb_in) {
            if inf(r, &b) != Some(s) {
                return false;
            }
        }
    }
    true
}

pub fn range_mask(n: usize, img: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in img {
        m[v] = true;
    }
    m
}

/// Every map `0..np → 0..nq` as an odometer, in lexicographic order.
pub fn all_maps(np: usize, nq: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (nq as u128).pow(np as u32);
    (0..total).map(move |mut code| {
        let mut img = vec![0; np];
        for slot in img.iter_mut().rev() {
            *slot = (code % nq as u128) as usize;
            code /= nq as u128;
        }
        img
    })
}

pub fn map_count(np: usize, nq: usize) -> u128 {
    (nq as u128).checked_pow(np as u32).unwrap_or(u128::MAX)
}

/// Full enumeration of embeddings, filtered by `keep`.
pub fn naive_embeddings(rp: &Rel, rq: &Rel, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    all_maps(rp.len(), rq.len())
        .filter(|img| is_embedding(rp, rq, img) && keep(img))
        .collect()
}

/// Embeddings by assigning elements in index order and checking every
/// assigned pair; works for any labelling.
pub fn dfs_embeddings(rp: &Rel, rq: &Rel, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    fn go(rp: &Rel, rq: &Rel, img: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, keep: &dyn Fn(&[usize]) -> bool) {
        let p = img.len();
        if p == rp.len() {
            if keep(img) {
                out.push(img.clone());
            }
            return;
        }
        for v in 0..rq.len() {
            let ok = (0..p).all(|a| rp[a][p] == rq[img[a]][v] && rp[p][a] == rq[v][img[a]])
                && rp[p][p] == rq[v][v];
            if ok {
                img.push(v);
                go(rp, rq, img, out, keep);
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rp, rq, &mut Vec::new(), &mut out, &keep);
    out
}

pub fn preserves_nonempty_sups(rp: &Rel, rq: &Rel, img: &[usize]) -> bool {
    let n = rp.len();
    (1u64..1 << n).all(|mask| {
        let a = members(mask, n);
        match sup(rp, &a) {
            None => true,
            Some(s) => {
                let ia: Vec<usize> = a.iter().map(|&p| img[p]).collect();
                sup(rq, &ia) == Some(img[s])
            }
        }
    })
}

pub fn preserves_nonempty_infs(rp: &Rel, rq: &Rel, img: &[usize]) -> bool {
    let n = rp.len();
    (1u64..1 << n).all(|mask| {
        let a = members(mask, n);
        match inf(rp, &a) {
            None => true,
            Some(s) => {
                let ia: Vec<usize> = a.iter().map(|&p| img[p]).collect();
                inf(rq, &ia) == Some(img[s])
            }
        }
    })
}

/// Atoms in the split sense: non-minimal `p` such that any two non-minimal
/// elements below `p` have a common non-minimal lower bound.
pub fn atoms(r: &Rel) -> Vec<usize> {
    let n = r.len();
    let positive: Vec<usize> = (0..n).filter(|&p| (0..n).any(|q| r[q][p] && !r[p][q])).collect();
    positive
        .iter()
        .copied()
        .filter(|&p| {
            let below: Vec<usize> = positive.iter().copied().filter(|&q| r[q][p]).collect();
            below.iter().all(|&q| {
                below.iter().all(|&s| positive.iter().any(|&t| r[t][q] && r[t][s]))
            })
        })
        .collect()
}

/// Atoms of the subposet on `inside`, as ambient indices.
pub fn relative_atoms(r: &Rel, inside: &[bool]) -> Vec<usize> {
    let idx: Vec<usize> = (0..r.len()).filter(|&i| inside[i]).collect();
    let sub: Rel = idx.iter().map(|&p| idx.iter().map(|&q| r[p][q]).collect()).collect();
    atoms(&sub).into_iter().map(|i| idx[i]).collect()
}

pub fn powerset_rel(n: usize) -> Rel {
    let size = 1usize << n;
    (0..size).map(|p| (0..size).map(|q| p & !q == 0).collect()).collect()
}

/// Componentwise order on `{0..k-1}^d`, little-endian base-k codes.
pub fn chain_product_rel(k: usize, d: usize) -> Rel {
    let size = k.pow(d as u32);
    let digits = |mut c: usize| {
        (0..d)
            .map(|_| {
                let x = c % k;
                c /= k;
                x
            })
            .collect::<Vec<_>>()
    };
    (0..size)
        .map(|p| (0..size).map(|q| digits(p).iter().zip(digits(q)).all(|(a, b)| *a <= b)).collect())
        .collect()
}

/// Open sets as bitmasks; interior is the union of opens inside `s`.
pub struct Space {
    pub n: usize,
    pub opens: Vec<u64>,
}

impl Space {
    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn interior(&self, s: u64) -> u64 {
        self.opens.iter().filter(|&&u| u & !s == 0).fold(0, |acc, &u| acc | u)
    }

    pub fn closure(&self, s: u64) -> u64 {
        !self.interior(!s & self.full()) & self.full()
    }

    pub fn nowhere_dense(&self, s: u64) -> bool {
        self.interior(self.closure(s)) == 0
    }

    pub fn regular_opens(&self) -> Vec<u64> {
        let mut v: Vec<u64> =
            self.opens.iter().copied().filter(|&u| self.interior(self.closure(u)) == u).collect();
        v.sort_unstable();
        v
    }

    /// Sets differing from an open set by a nowhere dense set.
    pub fn baire_sets(&self) -> Vec<u64> {
        (0..=self.full())
            .filter(|&s| self.opens.iter().any(|&u| self.nowhere_dense(s ^ u)))
            .collect()
    }
}

/// A tiny xorshift generator, separate from the library's RNG.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}
