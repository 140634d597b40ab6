//! Built-in algebras: matrix algebras and the two apical-algebra families.

use exactmat::Coeff;
use num_integer::Integer;

use crate::{AlgebraError, FinAlgebra};

/// Full matrix algebra Mat_r with matrix-unit basis e_{pq}, row-major order.
pub fn matrix_algebra<S: Coeff>(r: usize) -> FinAlgebra<S> {
    assert!(r >= 1);
    let d = r * r;
    let mut sc = vec![S::zero(); d * d * d];
    for p in 0..r {
        for q in 0..r {
            for s in 0..r {
                for t in 0..r {
                    // e_{pq} e_{st} = δ_{qs} e_{pt}
                    if q == s {
                        let i = p * r + q;
                        let j = s * r + t;
                        let k = p * r + t;
                        sc[(i * d + j) * d + k] = S::one();
                    }
                }
            }
        }
    }
    let mut unit = vec![S::zero(); d];
    for p in 0..r {
        unit[p * r + p] = S::one();
    }
    let labels = (0..r)
        .flat_map(|p| (0..r).map(move |q| format!("e{}{}", p + 1, q + 1)))
        .collect();
    FinAlgebra::new(d, unit, sc, Some(labels)).expect("matrix algebra shape")
}

/// The six-dimensional fiber algebra of the conifold resolution over the
/// double point: two corner idempotents, two generators in one off-diagonal
/// corner, two in the other, and every product of off-diagonal generators
/// equal to zero.
///
/// Basis order: e1, e2, y1, y2, one_bar, y1inv_y4.
pub fn conifold_apical<S: Coeff>() -> FinAlgebra<S> {
    let d = 6;
    let mut sc = vec![S::zero(); d * d * d];
    let mut set = |i: usize, j: usize, k: usize| {
        sc[(i * d + j) * d + k] = S::one();
    };
    let (e1, e2, y1, y2, one_bar, v) = (0, 1, 2, 3, 4, 5);
    set(e1, e1, e1);
    set(e2, e2, e2);
    // y1, y2 live in the (2,1) corner: e2 * y = y = y * e1
    for y in [y1, y2] {
        set(e2, y, y);
        set(y, e1, y);
    }
    // one_bar, y1inv_y4 live in the (1,2) corner: e1 * w = w = w * e2
    for w in [one_bar, v] {
        set(e1, w, w);
        set(w, e2, w);
    }
    let mut unit = vec![S::zero(); d];
    unit[e1] = S::one();
    unit[e2] = S::one();
    let labels = ["e1", "e2", "y1", "y2", "one_bar", "y1inv_y4"]
        .into_iter()
        .map(String::from)
        .collect();
    FinAlgebra::new(d, unit, sc, Some(labels)).expect("conifold shape")
}

fn monomial_label(exp: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exp.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn monomials_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, axis: usize, left: u32) {
        if axis + 1 == cur.len() {
            cur[axis] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[axis] = e;
            rec(out, cur, axis + 1, left - e);
        }
    }
    rec(&mut out, &mut cur, 0, deg);
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Fiber algebra of the cyclic quotient model: the monomial quotient of the
/// polynomial ring by the ideal of positive-degree invariant monomials,
/// crossed with Z/m. Built in the isotypic-idempotent basis
/// u_{b,c} = b * e_c, whose structure constants are all 0 or 1:
/// u_{b,c} u_{b',c'} = u_{bb',c'} when c' = c - weight(b') mod m and bb'
/// stays outside the invariant ideal, and 0 otherwise.
pub fn cyclic_quotient_apical<S: Coeff>(
    n: usize,
    m: u32,
    weights: &[i64],
    degree_cap: Option<u32>,
) -> Result<FinAlgebra<S>, AlgebraError> {
    if n == 0 || m == 0 {
        return Err(AlgebraError::BadInput("need n >= 1 and m >= 1".into()));
    }
    if weights.len() != n {
        return Err(AlgebraError::BadInput(format!(
            "expected {n} weights, got {}",
            weights.len()
        )));
    }
    let w: Vec<u32> = weights
        .iter()
        .map(|&x| (x.rem_euclid(m as i64)) as u32)
        .collect();
    if w.iter().sum::<u32>() % m != 0 {
        return Err(AlgebraError::BadInput(
            "weights do not sum to 0 mod m; the action is not special linear".into(),
        ));
    }
    let mut g = m;
    for &wi in &w {
        g = g.gcd(&wi);
    }
    if g != 1 {
        return Err(AlgebraError::BadInput(
            "weights share a common factor with m; the action is not effective".into(),
        ));
    }
    let cap = degree_cap.unwrap_or(m * n as u32);
    let weight_of = |exp: &[u32]| -> u32 {
        exp.iter()
            .zip(&w)
            .map(|(&e, &wi)| (e % m) * wi % m)
            .sum::<u32>()
            % m
    };

    let mut quotient: Vec<Vec<u32>> = vec![vec![0; n]];
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut stabilized = false;
    for deg in 1..=cap {
        let mut level_all_in_ideal = true;
        for mono in monomials_of_degree(n, deg) {
            if gens.iter().any(|g| divides(g, &mono)) {
                continue;
            }
            if weight_of(&mono) == 0 {
                gens.push(mono);
            } else {
                quotient.push(mono);
                level_all_in_ideal = false;
            }
        }
        if level_all_in_ideal {
            stabilized = true;
            break;
        }
    }
    if !stabilized {
        return Err(AlgebraError::QuotientUnbounded(cap as usize));
    }

    let mi = m as usize;
    let d = quotient.len() * mi;
    let index_of = |exp: &Vec<u32>| quotient.iter().position(|b| b == exp);
    let mut sc = vec![S::zero(); d * d * d];
    for (bi, b) in quotient.iter().enumerate() {
        for (bj, b2) in quotient.iter().enumerate() {
            let prod: Vec<u32> = b.iter().zip(b2).map(|(x, y)| x + y).collect();
            if gens.iter().any(|g| divides(g, &prod)) {
                continue;
            }
            let Some(bk) = index_of(&prod) else { continue };
            let shift = weight_of(b2);
            for c in 0..mi {
                // u_{b,c} u_{b2,c'} lands on u_{b b2, c'} when c' = c - w(b2)
                let cp = ((c as u32 + m - shift) % m) as usize;
                let i = bi * mi + c;
                let j = bj * mi + cp;
                let k = bk * mi + cp;
                sc[(i * d + j) * d + k] = S::one();
            }
        }
    }
    let mut unit = vec![S::zero(); d];
    for c in 0..mi {
        unit[c] = S::one();
    }
    let labels = quotient
        .iter()
        .flat_map(|b| (0..mi).map(move |c| format!("{}|e{c}", monomial_label(b))))
        .collect();
    FinAlgebra::new(d, unit, sc, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactmat::{Complex64, GaussRat, Mat};

    #[test]
    fn conifold_dimension_unit_and_corner_products() {
        let a: FinAlgebra<GaussRat> = conifold_apical();
        assert_eq!(a.dim(), 6);
        assert!(a.check_associativity(0.0));
        assert!(a.check_unit(0.0));
        // all 16 products of off-diagonal basis pairs vanish
        for i in 2..6 {
            for j in 2..6 {
                assert!(a.basis_product(i, j).is_empty(), "({i},{j})");
            }
        }
        // e1 + e2 = unit
        let mut s = vec![GaussRat::zero(); 6];
        s[0] = GaussRat::one();
        s[1] = GaussRat::one();
        assert_eq!(s, a.unit().to_vec());
    }

    #[test]
    fn conifold_radical_and_abelianization() {
        let a: FinAlgebra<GaussRat> = conifold_apical();
        let rad = a.radical_basis().unwrap();
        assert_eq!(rad.rows(), 4);
        let comm = a.commutator_ideal_basis(0.0);
        assert_eq!(comm.rows(), 4);
        assert_eq!(a.abelianization(0.0).dim(), 2);
    }

    #[test]
    fn a1_quotient_has_dimension_six() {
        let a: FinAlgebra<GaussRat> = cyclic_quotient_apical(2, 2, &[1, 1], None).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(a.check_associativity(0.0));
        assert!(a.check_unit(0.0));
        let labels = a.labels().unwrap();
        // quotient monomial basis {1, x, y}
        assert!(labels.iter().any(|l| l == "1|e0"));
        assert!(labels.iter().any(|l| l == "x1|e1"));
        assert!(labels.iter().any(|l| l == "x2|e0"));
    }

    #[test]
    fn z3_threefold_has_dimension_thirty() {
        let a: FinAlgebra<GaussRat> = cyclic_quotient_apical(3, 3, &[1, 1, 1], None).unwrap();
        assert_eq!(a.dim(), 30);
        assert!(a.check_associativity(0.0));
        assert!(a.check_unit(0.0));
    }

    #[test]
    fn bad_weights_are_rejected() {
        assert!(matches!(
            cyclic_quotient_apical::<GaussRat>(2, 2, &[1, 0], None),
            Err(AlgebraError::BadInput(_))
        ));
        assert!(matches!(
            cyclic_quotient_apical::<GaussRat>(2, 4, &[2, 2], None),
            Err(AlgebraError::BadInput(_))
        ));
    }

    #[test]
    fn undersized_degree_cap_is_an_error() {
        // the quotient basis still has monomials of degree 2, so a cap of 2
        // cannot observe stabilization
        assert!(matches!(
            cyclic_quotient_apical::<GaussRat>(3, 3, &[1, 1, 1], Some(2)),
            Err(AlgebraError::QuotientUnbounded(2))
        ));
    }

    /// Crossed-product algebra in the group basis (b, g^t) with
    /// (b, g^t)(b', g^s) = zeta^{t*w(b')} (b b', g^{t+s}), for cross-checking
    /// the idempotent-basis construction. Needs zeta_m in the scalar field.
    fn group_basis_crossed_product<S: Coeff>(
        n: usize,
        m: u32,
        weights: &[i64],
        zeta_pow: impl Fn(u32) -> S,
    ) -> (FinAlgebra<S>, Vec<Vec<u32>>) {
        let w: Vec<u32> = weights
            .iter()
            .map(|&x| (x.rem_euclid(m as i64)) as u32)
            .collect();
        let weight_of = |exp: &[u32]| -> u32 {
            exp.iter()
                .zip(&w)
                .map(|(&e, &wi)| (e % m) * wi % m)
                .sum::<u32>()
                % m
        };
        // rebuild the same monomial quotient basis
        let mut quotient: Vec<Vec<u32>> = vec![vec![0; n]];
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for deg in 1..=(m * n as u32) {
            let mut all_in = true;
            for mono in monomials_of_degree(n, deg) {
                if gens.iter().any(|g| divides(g, &mono)) {
                    continue;
                }
                if weight_of(&mono) == 0 {
                    gens.push(mono);
                } else {
                    quotient.push(mono);
                    all_in = false;
                }
            }
            if all_in {
                break;
            }
        }
        let mi = m as usize;
        let d = quotient.len() * mi;
        let mut sc = vec![S::zero(); d * d * d];
        for (bi, b) in quotient.iter().enumerate() {
            for (bj, b2) in quotient.iter().enumerate() {
                let prod: Vec<u32> = b.iter().zip(b2).map(|(x, y)| x + y).collect();
                if gens.iter().any(|g| divides(g, &prod)) {
                    continue;
                }
                let Some(bk) = quotient.iter().position(|q| q == &prod) else {
                    continue;
                };
                for t in 0..mi {
                    for s in 0..mi {
                        let i = bi * mi + t;
                        let j = bj * mi + s;
                        let k = bk * mi + (t + s) % mi;
                        sc[(i * d + j) * d + k] = zeta_pow(t as u32 * weight_of(b2) % m);
                    }
                }
            }
        }
        let mut unit = vec![S::zero(); d];
        unit[0] = S::one();
        (
            FinAlgebra::new(d, unit, sc, None).unwrap(),
            quotient,
        )
    }

    #[test]
    fn idempotent_basis_matches_group_basis_for_m2_exactly() {
        // zeta_2 = -1 lives in the exact field, so the change of basis
        // u_{b,c} = (1/2) sum_t (-1)^{ct} (b, g^t) can be verified exactly
        let m = 2u32;
        let a: FinAlgebra<GaussRat> = cyclic_quotient_apical(2, 2, &[1, 1], None).unwrap();
        let (g, quotient) = group_basis_crossed_product::<GaussRat>(2, m, &[1, 1], |p| {
            if p % 2 == 0 {
                GaussRat::one()
            } else {
                -GaussRat::one()
            }
        });
        assert_eq!(a.dim(), g.dim());
        let d = a.dim();
        let mi = m as usize;
        let inv2 = GaussRat::from_int(2).try_inv().unwrap();
        let mut phi: Mat<GaussRat> = Mat::zeros(d, d);
        for (bi, _) in quotient.iter().enumerate() {
            for c in 0..mi {
                for t in 0..mi {
                    let sign = if (c * t) % 2 == 0 {
                        GaussRat::one()
                    } else {
                        -GaussRat::one()
                    };
                    phi.set(bi * mi + t, bi * mi + c, sign * inv2.clone());
                }
            }
        }
        assert!(phi.inverse(0.0).is_some());
        // phi is an algebra isomorphism: phi(u_a *_idem u_b) = phi(u_a) *_grp phi(u_b)
        for i in 0..d {
            for j in 0..d {
                let mut ei = vec![GaussRat::zero(); d];
                ei[i] = GaussRat::one();
                let mut ej = vec![GaussRat::zero(); d];
                ej[j] = GaussRat::one();
                let lhs_vec = a.multiply(&ei, &ej);
                let lhs = phi.matmul(&Mat::col_vec(lhs_vec));
                let pi = phi.matmul(&Mat::col_vec(ei));
                let pj = phi.matmul(&Mat::col_vec(ej));
                let rhs = Mat::col_vec(g.multiply(&pi.col(0), &pj.col(0)));
                assert_eq!(lhs, rhs, "pair ({i},{j})");
            }
        }
        // transported unit agrees
        let ua = phi.matmul(&Mat::col_vec(a.unit().to_vec()));
        assert_eq!(ua.col(0), g.unit().to_vec());
    }

    #[test]
    fn idempotent_basis_matches_group_basis_for_m3_in_floats() {
        let m = 3u32;
        let a: FinAlgebra<Complex64> = cyclic_quotient_apical(3, 3, &[1, 1, 1], None).unwrap();
        let zeta = Complex64::new(-0.5, 0.75f64.sqrt());
        let (g, quotient) =
            group_basis_crossed_product::<Complex64>(3, m, &[1, 1, 1], |p| zeta.powu(p));
        assert_eq!(a.dim(), g.dim());
        let d = a.dim();
        let mi = m as usize;
        let third = Complex64::new(1.0 / 3.0, 0.0);
        let mut phi: Mat<Complex64> = Mat::zeros(d, d);
        for (bi, _) in quotient.iter().enumerate() {
            for c in 0..mi {
                for t in 0..mi {
                    // u_{b,c} = (1/m) sum_t zeta^{-ct} (b, g^t)
                    let w = zeta.powu(((m as usize - c) * t % mi) as u32);
                    phi.set(bi * mi + t, bi * mi + c, w * third);
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let mut ei = vec![Complex64::new(0.0, 0.0); d];
                ei[i] = Complex64::new(1.0, 0.0);
                let mut ej = vec![Complex64::new(0.0, 0.0); d];
                ej[j] = Complex64::new(1.0, 0.0);
                let lhs = phi.matmul(&Mat::col_vec(a.multiply(&ei, &ej)));
                let pi = phi.matmul(&Mat::col_vec(ei));
                let pj = phi.matmul(&Mat::col_vec(ej));
                let rhs = Mat::col_vec(g.multiply(&pi.col(0), &pj.col(0)));
                assert!(lhs.approx_eq(&rhs, 1e-9), "pair ({i},{j})");
            }
        }
    }
}
