//! Quotient matrices of the complements of `U(p, q)` and `U'(p)` over the
//! vertex classes named in [`crate::families`].
//!
//! Entry `(i, j)` is the number of complement-neighbours in class `j` of a
//! vertex of class `i`. A first eigenvector is constant on each class, so the
//! least eigenvalue of the complement is the least root of `det(B − λI)`
//! (classes that are empty for the smallest parameters only contribute the
//! spurious root −1).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{char_poly_matrix, IntPoly, PolyError};
use crate::families::FamilyError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    entries: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Self {
        assert!(entries.iter().all(|r| r.len() == entries.len()), "quotient matrix must be square");
        Self { entries }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    /// `det(B − λI)`.
    pub fn char_poly(&self) -> IntPoly {
        let big: Vec<Vec<BigInt>> = self.entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        char_poly_matrix(&big)
    }
}

fn need(family: &'static str, param: &'static str, min: usize, got: usize) -> Result<(), PolyError> {
    if got < min {
        Err(FamilyError { family, param, min, got }.into())
    } else {
        Ok(())
    }
}

/// Order-7 quotient of `U(p, q)ᶜ` over the classes `v1..v7`.
pub fn quotient_matrix_u(p: usize, q: usize) -> Result<QuotientMatrix, PolyError> {
    need("u", "p", 1, p)?;
    need("u", "q", 3, q)?;
    let (a, b) = (p as i64 - 1, q as i64 - 3);
    Ok(QuotientMatrix::new(vec![
        vec![a - 1, 0, 1, 1, 1, 2, b],
        vec![0, 0, 0, 1, 1, 2, b],
        vec![a, 0, 0, 0, 1, 2, b],
        vec![a, 1, 0, 0, 0, 2, b],
        vec![a, 1, 1, 0, 0, 0, 0],
        vec![a, 1, 1, 1, 0, 0, b],
        vec![a, 1, 1, 1, 0, 2, b - 1],
    ]))
}

/// Order-5 quotient of `U'(p)ᶜ` over the classes `u1..u5`.
pub fn quotient_matrix_uprime(p: usize) -> Result<QuotientMatrix, PolyError> {
    need("uprime", "p", 1, p)?;
    let a = p as i64 - 1;
    Ok(QuotientMatrix::new(vec![
        vec![a - 1, 0, 1, 1, 2],
        vec![0, 0, 0, 1, 2],
        vec![a, 0, 0, 0, 2],
        vec![a, 1, 0, 0, 0],
        vec![a, 1, 1, 0, 0],
    ]))
}

/// Quotient matrix of `g` over `classes`, read off the graph itself.
///
/// Returns `None` unless the classes are nonempty, partition the vertex set,
/// and form an equitable partition.
pub fn class_quotient(g: &Graph, classes: &[&[usize]]) -> Option<QuotientMatrix> {
    let n = g.order();
    let mut owner = vec![usize::MAX; n];
    for (i, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return None;
        }
        for &v in class.iter() {
            if v >= n || owner[v] != usize::MAX {
                return None;
            }
            owner[v] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return None;
    }
    let k = classes.len();
    let mut entries = vec![vec![0i64; k]; k];
    for (i, class) in classes.iter().enumerate() {
        for (idx, &v) in class.iter().enumerate() {
            let mut row = vec![0i64; k];
            for u in g.neighbors(v) {
                row[owner[u]] += 1;
            }
            if idx == 0 {
                entries[i] = row;
            } else if entries[i] != row {
                return None;
            }
        }
    }
    Some(QuotientMatrix::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{u_pq_poly, u_prime_poly};
    use crate::families::{u_pq, u_prime};

    #[test]
    fn first_row_pattern() {
        for (p, q) in [(1, 3), (5, 8), (12, 4)] {
            let b = quotient_matrix_u(p, q).unwrap();
            let (p, q) = (p as i64, q as i64);
            assert_eq!(b.row(0), &[p - 2, 0, 1, 1, 1, 2, q - 3]);
        }
        assert_eq!(quotient_matrix_u(1, 3).unwrap().order(), 7);
        assert_eq!(quotient_matrix_uprime(1).unwrap().order(), 5);
        assert!(quotient_matrix_u(0, 3).is_err());
        assert!(quotient_matrix_uprime(0).is_err());
    }

    #[test]
    fn matches_graph_classes() {
        // With every class nonempty the matrices must equal the ones read off
        // the complement graph.
        for p in 2..=8 {
            for q in 4..=9 {
                let f = u_pq(p, q).unwrap();
                let c = f.graph.complement();
                let names = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"];
                let classes: Vec<&[usize]> = names.iter().map(|r| f.role(r)).collect();
                assert_eq!(class_quotient(&c, &classes).unwrap(), quotient_matrix_u(p, q).unwrap());
            }
            let f = u_prime(p).unwrap();
            let c = f.graph.complement();
            let classes: Vec<&[usize]> = ["u1", "u2", "u3", "u4", "u5"].iter().map(|r| f.role(r)).collect();
            assert_eq!(class_quotient(&c, &classes).unwrap(), quotient_matrix_uprime(p).unwrap());
        }
    }

    #[test]
    fn determinants_match_closed_forms() {
        for p in 1..=10 {
            for q in 3..=10 {
                assert_eq!(quotient_matrix_u(p, q).unwrap().char_poly(), u_pq_poly(p, q).unwrap());
            }
            assert_eq!(quotient_matrix_uprime(p).unwrap().char_poly(), u_prime_poly(p).unwrap());
        }
    }

    #[test]
    fn rejects_non_equitable() {
        let g = crate::families::star(4).unwrap();
        assert!(class_quotient(&g, &[&[0, 1], &[2, 3]]).is_none());
        assert!(class_quotient(&g, &[&[0], &[1, 2]]).is_none());
        assert!(class_quotient(&g, &[&[0], &[1, 2, 3], &[]]).is_none());
        let q = class_quotient(&g, &[&[0], &[1, 2, 3]]).unwrap();
        assert_eq!(q.entries(), &[vec![0, 3], vec![1, 0]]);
    }
}
