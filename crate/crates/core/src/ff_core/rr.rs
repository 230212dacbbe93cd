//! Riemann-Roch spaces at genus 0 and the separating-element search.
//!
//! L(D) = { f : div(f) + D >= 0 } with the sign convention that a positive
//! multiplicity in D allows a pole and a negative one forces a zero. Over the
//! projective line dim L(D) = max(0, deg D + 1); the basis is computed by
//! explicit linear algebra on numerator coefficient vectors.

use super::divisor::{ord_at, Divisor, Place};
use super::fq::{Fq, FqElement};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Canonical basis of L(D). Empty when deg D < 0.
pub fn riemann_roch_basis(fq: &Fq, d: &Divisor) -> Vec<RatFunc> {
    // Denominator collects the finite pole allowances.
    let mut den = Poly::one(fq);
    let mut zero_constraints: Vec<Poly> = vec![];
    let mut inf_allowance: i64 = 0;
    for (place, m) in d.iter() {
        match place {
            Place::Infinite => inf_allowance = m,
            Place::Finite(p) => {
                if m > 0 {
                    den = den.mul(fq, &p.pow(fq, m as u32));
                } else {
                    zero_constraints.push(p.pow(fq, (-m) as u32));
                }
            }
        }
    }
    let max_num_deg = den.deg().unwrap() as i64 + inf_allowance;
    if max_num_deg < 0 {
        return vec![];
    }
    let cols = (max_num_deg + 1) as usize;

    // One row per forced coefficient of (numerator mod Z) for each zero
    // constraint Z; columns are numerator coefficients.
    let mut rows: Vec<Vec<FqElement>> = vec![];
    for z in &zero_constraints {
        let dz = z.deg().unwrap();
        // residues of t^j mod Z, built incrementally
        let mut tj = Poly::one(fq);
        let mut residues = vec![];
        for _ in 0..cols {
            residues.push(tj.clone());
            tj = tj.mul(fq, &Poly::var(fq)).rem(fq, z).unwrap();
        }
        for c in 0..dz {
            let row: Vec<FqElement> = residues.iter().map(|r| r.coeff(fq, c)).collect();
            rows.push(row);
        }
    }

    let kernel = nullspace(fq, &rows, cols);
    kernel
        .into_iter()
        .map(|coeffs| {
            let num = Poly::from_coeffs(fq, coeffs);
            RatFunc::new(fq, num, den.clone()).expect("nonzero denominator")
        })
        .collect()
}

/// Canonical nullspace basis via reduced row echelon form: one vector per
/// free column, in ascending column order.
fn nullspace(fq: &Fq, rows: &[Vec<FqElement>], cols: usize) -> Vec<Vec<FqElement>> {
    let mut m: Vec<Vec<FqElement>> = rows.to_vec();
    let mut pivot_cols = vec![];
    let mut r = 0;
    for c in 0..cols {
        let pivot = (r..m.len()).find(|&i| !m[i][c].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(r, pivot);
        let inv = fq.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = fq.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let s = fq.mul(&factor, &m[r][j]);
                    m[i][j] = fq.sub(&m[i][j], &s);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = vec![];
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![fq.zero(); cols];
        v[free] = fq.one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = fq.neg(&m[row_idx][free]);
        }
        basis.push(v);
    }
    basis
}

/// Finds y with pole divisor T^(deg A + 1) and zero divisor A*C, where C is
/// integral of degree 1 and coprime to A, B, T. The element is the first
/// admissible member of L(U) in canonical enumeration order.
pub fn construct_separating_element(
    fq: &Fq,
    a: &Divisor,
    b: &Divisor,
    t_place: &Place,
) -> Result<RatFunc> {
    if !a.is_integral() || !b.is_integral() {
        return Err(Error::Invalid("A and B must be integral divisors".into()));
    }
    if a.get(t_place) != 0 || b.get(t_place) != 0 {
        return Err(Error::Invalid("A and B must be coprime to T".into()));
    }
    for (p, _) in a.iter() {
        if b.get(p) != 0 {
            return Err(Error::Invalid("A and B must be coprime".into()));
        }
    }
    let deg_a = a.degree();
    let pole_order = deg_a + 1; // 2g + 1 + deg A at g = 0

    let mut u = a.neg();
    u.add_place(t_place.clone(), pole_order);
    let basis = riemann_roch_basis(fq, &u);
    debug_assert_eq!(basis.len() as i64, 2); // deg U + 1 = 2

    let exclusions: Vec<Place> = a
        .support()
        .chain(b.support())
        .cloned()
        .collect();

    let q = fq.q();
    let dim = basis.len();
    let total = (q as u128).pow(dim as u32);
    'outer: for n in 1..total {
        let mut y = RatFunc::zero(fq);
        let mut rest = n;
        for item in basis.iter().take(dim) {
            let scalar = fq.element((rest % q as u128) as u64);
            rest /= q as u128;
            if !scalar.is_zero() {
                y = y.add(fq, &item.mul(fq, &RatFunc::constant(fq, scalar)));
            }
        }
        if y.is_zero() {
            continue;
        }
        // Pole exactly T^(deg A + 1).
        if ord_at(fq, &y, t_place)? != -pole_order {
            continue;
        }
        // Zeros meet A exactly and avoid B.
        for p in &exclusions {
            let want = a.get(p);
            if ord_at(fq, &y, p)? != want {
                continue 'outer;
            }
        }
        return Ok(y);
    }
    Err(Error::FieldTooSmall {
        smallest_sufficient_k: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::divisor::divisor_of;
    use crate::ff_core::parser::parse_ratfunc;

    fn f3() -> Fq {
        Fq::new(3, 1).unwrap()
    }

    fn place(fq: &Fq, s: &str) -> Place {
        Place::parse(fq, s).unwrap()
    }

    #[test]
    fn poles_only_at_infinity() {
        let fq = f3();
        let d = Divisor::from_entries([(Place::Infinite, 2)]);
        let basis = riemann_roch_basis(&fq, &d);
        let strings: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
        assert_eq!(strings, vec!["(1)/(1)", "(t)/(1)", "(t^2)/(1)"]);
    }

    #[test]
    fn negative_degree_is_empty() {
        let fq = f3();
        let d = Divisor::from_entries([(place(&fq, "t"), -1)]);
        assert!(riemann_roch_basis(&fq, &d).is_empty());
    }

    #[test]
    fn pole_at_t_zero_at_t_minus_1() {
        let fq = f3();
        let d = Divisor::from_entries([(place(&fq, "t"), 1), (place(&fq, "t + 2"), -1)]);
        let basis = riemann_roch_basis(&fq, &d);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], parse_ratfunc(&fq, "(t - 1)/t").unwrap());
    }

    #[test]
    fn dimension_formula_spot_checks() {
        let fq = f3();
        for (entries, expect) in [
            (vec![(place(&fq, "t^2 + 1"), 2), (Place::Infinite, -1)], 4usize),
            (vec![(place(&fq, "t"), 3), (place(&fq, "t + 1"), -2)], 2),
            (vec![(Place::Infinite, 0)], 1),
        ] {
            let d = Divisor::from_entries(entries);
            let basis = riemann_roch_basis(&fq, &d);
            assert_eq!(basis.len(), expect);
            assert_eq!(basis.len() as i64, (d.degree() + 1).max(0));
        }
    }

    #[test]
    fn separating_element_over_f5() {
        let f5 = Fq::new(5, 1).unwrap();
        let a = Divisor::from_entries([(place(&f5, "t + 4"), 1)]); // (t - 1)
        let b = Divisor::from_entries([(place(&f5, "t + 1"), 1)]);
        let t = place(&f5, "t");
        let y = construct_separating_element(&f5, &a, &b, &t).unwrap();
        assert_eq!(ord_at(&f5, &y, &t).unwrap(), -2);
        assert_eq!(ord_at(&f5, &y, &place(&f5, "t + 4")).unwrap(), 1);
        assert_eq!(ord_at(&f5, &y, &place(&f5, "t + 1")).unwrap(), 0);
        // zero divisor = A * C with C integral of degree 1, coprime to A, B, T
        let div = divisor_of(&f5, &y).unwrap();
        let c = div.add(&Divisor::from_entries([(t.clone(), 2)]).add(&a.neg()));
        assert!(c.is_integral());
        assert_eq!(c.degree(), 1);
        // deterministic
        assert_eq!(construct_separating_element(&f5, &a, &b, &t).unwrap(), y);
    }

    #[test]
    fn separating_element_trivial_divisors() {
        let fq = f3();
        let empty = Divisor::new();
        let y = construct_separating_element(&fq, &empty, &empty, &Place::Infinite).unwrap();
        assert_eq!(y.height(&fq).unwrap(), 1);
        assert_eq!(ord_at(&fq, &y, &Place::Infinite).unwrap(), -1);
    }

    #[test]
    fn separating_element_composite_a() {
        let fq = f3();
        let a = Divisor::from_entries([(place(&fq, "t + 1"), 1), (place(&fq, "t + 2"), 1)]);
        let b = Divisor::new();
        let t = place(&fq, "t");
        let y = construct_separating_element(&fq, &a, &b, &t).unwrap();
        assert_eq!(ord_at(&fq, &y, &t).unwrap(), -3);
    }

    #[test]
    fn rejects_bad_preconditions() {
        let fq = f3();
        let a = Divisor::from_entries([(place(&fq, "t"), 1)]);
        let b = Divisor::new();
        assert!(construct_separating_element(&fq, &a, &b, &place(&fq, "t")).is_err());
    }
}
