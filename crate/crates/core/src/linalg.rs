//! Linear algebra over prime fields, used to write elements of a field in a basis over
//! an embedded subfield.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{fp, Embedding, Field};

/// Inverts a square matrix over `F_p` (rows of equal length), or returns `None` if it is
/// singular.
pub fn invert_mod_p(matrix: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<u32>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| (i == j) as u32));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        let inv = fp::inv(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for r in 0..n {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col];
            let (pivot_row, row) = if r < col {
                let (lo, hi) = a.split_at_mut(col);
                (&hi[0], &mut lo[r])
            } else {
                let (lo, hi) = a.split_at_mut(r);
                (&lo[col], &mut hi[0])
            };
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = (*x + p - (factor as u64 * y as u64 % p as u64) as u32) % p;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A basis `b_0, …, b_{m-1}` of a field `F` over the image of an embedding `k → F`.
#[derive(Clone, Debug)]
pub struct RelativeBasis {
    embedding: Embedding,
    basis: Vec<u32>,
    inverse: Vec<Vec<u32>>,
}

impl RelativeBasis {
    pub fn new(embedding: Embedding, basis: Vec<u32>) -> Result<RelativeBasis> {
        let big = embedding.sup().clone();
        let small = embedding.sub().clone();
        let nk = small.degree() as usize;
        let nf = big.degree() as usize;
        if basis.len() * nk != nf {
            return Err(Error::DegreeMismatch(format!(
                "{} elements cannot form a basis of {big} over {small}",
                basis.len()
            )));
        }
        let p = big.characteristic();
        let mut columns = Vec::with_capacity(nf);
        for &b in &basis {
            for t in 0..nk {
                let gamma_t = embedding.apply_raw(p.pow(t as u32));
                columns.push(big.coords_of(big.mul(gamma_t, b)));
            }
        }
        let matrix: Vec<Vec<u32>> = (0..nf).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        let inverse = invert_mod_p(&matrix, p)
            .ok_or_else(|| Error::InvalidParams(format!("elements are linearly dependent over {small}")))?;
        Ok(RelativeBasis { embedding, basis, inverse })
    }

    /// The basis `1, θ, …, θ^(m-1)`.
    pub fn power_basis(embedding: Embedding, theta: u32) -> Result<RelativeBasis> {
        let big = embedding.sup().clone();
        let m = (big.degree() / embedding.sub().degree()) as usize;
        let mut basis = Vec::with_capacity(m);
        let mut cur = 1;
        for _ in 0..m {
            basis.push(cur);
            cur = big.mul(cur, theta);
        }
        Self::new(embedding, basis)
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn big(&self) -> &Field {
        self.embedding.sup()
    }

    pub fn small(&self) -> &Field {
        self.embedding.sub()
    }

    /// Coordinates `a_i ∈ k` with `z = Σ e(a_i) b_i`.
    pub fn decompose(&self, z: u32) -> Vec<u32> {
        let big = self.big();
        let small = self.small();
        let p = big.characteristic() as u64;
        let nk = small.degree() as usize;
        let coords = big.coords_of(z);
        let u: Vec<u32> = self
            .inverse
            .iter()
            .map(|row| (row.iter().zip(&coords).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32)
            .collect();
        u.chunks(nk).map(|chunk| small.index_of_coords(chunk)).collect()
    }

    /// `Σ e(a_i) b_i`.
    pub fn compose(&self, coeffs: &[u32]) -> u32 {
        let big = self.big();
        coeffs.iter().zip(&self.basis).fold(0, |acc, (&a, &b)| big.add(acc, big.mul(self.embedding.apply_raw(a), b)))
    }
}

/// Solves `A x = b` over `F_p` for square invertible `A`.
pub fn solve_mod_p(matrix: &[Vec<u32>], rhs: &[u32], p: u32) -> Option<Vec<u32>> {
    let inv = invert_mod_p(matrix, p)?;
    Some(
        inv.iter()
            .map(|row| (row.iter().zip(rhs).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32)
            .collect(),
    )
}
