//! Exhaustive oracle for monomial algebras over F_2. Elements are bitmasks
//! over the standard monomials and subspaces are explicit sets of elements,
//! so nothing here shares code with the engine.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub struct MonomialAlgebra {
    pub basis: Vec<Vec<u32>>,
    table: Vec<Vec<Option<usize>>>,
}

pub type Space = BTreeSet<u64>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialAlgebra {
    /// `k[x_1..x_n]` modulo the monomials `gens`, which must include a pure
    /// power of every variable.
    pub fn new(nvars: usize, gens: &[Vec<u32>]) -> Self {
        let bound: Vec<u32> = (0..nvars)
            .map(|v| {
                gens.iter()
                    .filter(|g| g.iter().enumerate().all(|(i, &e)| (i == v) == (e > 0)))
                    .map(|g| g[v])
                    .min()
                    .expect("pure power for every variable")
            })
            .collect();
        let mut basis = vec![vec![]];
        for &b in &bound {
            basis = basis
                .into_iter()
                .flat_map(|m: Vec<u32>| (0..b).map(move |e| [m.clone(), vec![e]].concat()))
                .collect();
        }
        basis.retain(|m| !gens.iter().any(|g| divides(g, m)));
        let index = |m: &Vec<u32>| basis.iter().position(|b| b == m);
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let p: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index(&p)
                    })
                    .collect()
            })
            .collect();
        assert!(basis.len() <= 16, "oracle is exhaustive");
        Self { basis, table }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for i in 0..self.dim() {
            if a >> i & 1 == 0 {
                continue;
            }
            for j in 0..self.dim() {
                if b >> j & 1 == 1 {
                    if let Some(k) = self.table[i][j] {
                        out ^= 1 << k;
                    }
                }
            }
        }
        out
    }

    pub fn everything(&self) -> Space {
        (0..1u64 << self.dim()).collect()
    }

    pub fn span(gens: impl IntoIterator<Item = u64>) -> Space {
        let mut s: Space = [0].into();
        for g in gens {
            if !s.contains(&g) {
                let shifted: Vec<u64> = s.iter().map(|x| x ^ g).collect();
                s.extend(shifted);
            }
        }
        s
    }

    pub fn maximal(&self) -> Space {
        Self::span((0..self.dim()).filter(|&i| self.basis[i].iter().any(|&e| e > 0)).map(|i| 1 << i))
    }

    pub fn product(&self, a: &Space, b: &Space) -> Space {
        Self::span(a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| self.mul(x, y)))
    }

    pub fn annihilator(&self, a: &Space) -> Space {
        let gens = xor_basis(a);
        self.everything()
            .into_iter()
            .filter(|&x| gens.iter().all(|&y| self.mul(x, y) == 0))
            .collect()
    }

    pub fn powers(&self) -> Vec<Space> {
        let max = self.maximal();
        let mut out = vec![self.everything()];
        while out.last().unwrap().len() > 1 {
            let next = self.product(out.last().unwrap(), &max);
            out.push(next);
        }
        out
    }
}

/// A basis of a space of bitmask vectors over F_2.
pub fn xor_basis(s: &Space) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in s {
        let r = basis.iter().fold(v, |acc, &b| acc.min(acc ^ b));
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

pub fn dim(s: &Space) -> usize {
    s.len().trailing_zeros() as usize
}

/// Chain dimensions `(I^ℓ, 0 : I^(m+1-ℓ), 0 : (0 : I^ℓ))` for `ℓ = 0..=m+1`,
/// and the socle dimension.
pub struct OracleData {
    pub m: usize,
    pub powers: Vec<usize>,
    pub annihilator: Vec<usize>,
    pub double_annihilator: Vec<usize>,
    pub socle_dim: usize,
}

pub fn oracle(nvars: usize, gens: &[Vec<u32>]) -> OracleData {
    let alg = MonomialAlgebra::new(nvars, gens);
    let powers = alg.powers();
    let m = powers.len() - 2;
    let ann: Vec<Space> = (0..=m + 1).map(|l| alg.annihilator(&powers[m + 1 - l])).collect();
    let dann: Vec<Space> = (0..=m + 1).map(|l| alg.annihilator(&ann[m + 1 - l])).collect();
    OracleData {
        m,
        powers: powers.iter().map(dim).collect(),
        annihilator: ann.iter().map(dim).collect(),
        double_annihilator: dann.iter().map(dim).collect(),
        socle_dim: dim(&alg.annihilator(&alg.maximal())),
    }
}

pub fn graded(dims: &[usize]) -> Vec<usize> {
    dims.windows(2).map(|w| w[0] - w[1]).collect()
}

/// The input text of the golden example.
pub const GOLDEN: &str = "field 32003\nvars x, y\nideal x^3; x*y; y^4\n";

pub fn golden_oracle() -> OracleData {
    oracle(2, &[vec![3, 0], vec![1, 1], vec![0, 4]])
}
