use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::group_engine::GroupPresentation;

/// `Γ^ab ≅ Z^free_rank ⊕ ⊕ Z/d_i`, with every `d_i > 1` and `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl Abelianization {
    pub fn of(presentation: &GroupPresentation) -> Self {
        let rows: Vec<Vec<BigInt>> = presentation
            .exponent_matrix()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let diagonal = smith_diagonal(rows, presentation.generator_count());
        let rank = diagonal.len();
        Self {
            free_rank: presentation.generator_count() - rank,
            torsion: diagonal
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        }
    }

    /// `|torsion|`, the number of homomorphisms to a circle up to the free part.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }
}

/// Nonzero invariant factors of an integer matrix with `cols` columns.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigUint> {
    let rows = m.len();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Divisibility: fold any entry not divisible by the pivot
                // into the pivot row and go again.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t into the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            } else if best.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diagonal.push(m[t][t].abs().to_biguint().expect("absolute value"));
        t += 1;
    }
    diagonal
}
