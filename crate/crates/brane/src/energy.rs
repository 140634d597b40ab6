use crate::{
    commutativity_defect, commutator, frob, hermitian_part, trace_re, BraneError, BraneMap, CMat,
    GaugeField, WorldvolumeLattice,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn check_compat(
    map: &BraneMap,
    gauge: &GaugeField,
    lat: &WorldvolumeLattice,
) -> Result<(), BraneError> {
    if map.num_sites() != lat.num_sites() {
        return Err(BraneError::ShapeMismatch(format!(
            "map has {} sites, lattice has {}",
            map.num_sites(),
            lat.num_sites()
        )));
    }
    if map.rank() != gauge.rank() {
        return Err(BraneError::ShapeMismatch(format!(
            "map rank {} against gauge rank {}",
            map.rank(),
            gauge.rank()
        )));
    }
    if gauge.links().len() != lat.num_sites() {
        return Err(BraneError::ShapeMismatch(format!(
            "gauge field covers {} sites, lattice has {}",
            gauge.links().len(),
            lat.num_sites()
        )));
    }
    for site in 0..lat.num_sites() {
        for axis in 0..lat.dim() {
            if lat.forward(site, axis).is_some() != gauge.link(site, axis).is_some() {
                return Err(BraneError::ShapeMismatch(format!(
                    "gauge link presence at site {site}, axis {axis} does not match the lattice"
                )));
            }
        }
    }
    Ok(())
}

fn forward_difference(
    map: &BraneMap,
    gauge: &GaugeField,
    lat: &WorldvolumeLattice,
    site: usize,
    axis: usize,
    alpha: usize,
) -> Option<CMat> {
    let nb = lat.forward(site, axis)?;
    let u = gauge.link(site, axis)?;
    let a = lat.spacing();
    Some((u * map.at(nb, alpha) * u.adjoint() - map.at(site, alpha)).map(|z| z / a))
}

/// Lattice kinetic energy
/// `E = (T/2) a^d sum_x sum_mu h^mumu sum_alpha Re Tr (D_mu m^alpha)^2`
/// with the forward covariant difference
/// `D_mu m(x) = (U_mu(x) m(x+mu) U_mu(x)^dagger - m(x)) / a`.
pub fn energy(
    map: &BraneMap,
    gauge: &GaugeField,
    lat: &WorldvolumeLattice,
    tension: f64,
) -> Result<f64, BraneError> {
    check_compat(map, gauge, lat)?;
    if !tension.is_finite() {
        return Err(BraneError::ShapeMismatch(format!("tension {tension} not finite")));
    }
    let per_site: Vec<f64> = (0..lat.num_sites())
        .into_par_iter()
        .map(|site| {
            let mut acc = 0.0;
            for axis in 0..lat.dim() {
                for alpha in 0..map.coords() {
                    if let Some(f) = forward_difference(map, gauge, lat, site, axis, alpha) {
                        acc += lat.weights()[axis] * trace_re(&(&f * &f));
                    }
                }
            }
            acc
        })
        .collect();
    let sum: f64 = per_site.iter().sum();
    Ok(0.5 * tension * lat.spacing().powi(lat.dim() as i32) * sum)
}

/// Total squared commutator norm, `sum_x sum_{alpha<beta} |[m^alpha, m^beta]|_F^2`.
pub fn commutator_penalty(map: &BraneMap) -> f64 {
    let per_site: Vec<f64> = (0..map.num_sites())
        .into_par_iter()
        .map(|site| {
            let mut acc = 0.0;
            for alpha in 0..map.coords() {
                for beta in alpha + 1..map.coords() {
                    let c = commutator(map.at(site, alpha), map.at(site, beta));
                    acc += c.iter().map(|z| z.norm_sqr()).sum::<f64>();
                }
            }
            acc
        })
        .collect();
    per_site.iter().sum()
}

/// Euclidean gradient of `energy + kappa * commutator_penalty` with respect
/// to the hermitian coordinate matrices, returned as a map of the same shape.
pub fn energy_gradient(
    map: &BraneMap,
    gauge: &GaugeField,
    lat: &WorldvolumeLattice,
    tension: f64,
    kappa: f64,
) -> Result<BraneMap, BraneError> {
    check_compat(map, gauge, lat)?;
    let d = lat.dim();
    let n = map.coords();
    let diffs: Vec<Vec<Option<Vec<CMat>>>> = (0..lat.num_sites())
        .into_par_iter()
        .map(|site| {
            (0..d)
                .map(|axis| {
                    lat.forward(site, axis)?;
                    Some(
                        (0..n)
                            .map(|alpha| {
                                forward_difference(map, gauge, lat, site, axis, alpha).unwrap()
                            })
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    let prefactor = tension * lat.spacing().powi(lat.dim() as i32 - 1);
    let grads: Vec<Vec<CMat>> = (0..lat.num_sites())
        .into_par_iter()
        .map(|site| {
            (0..n)
                .map(|alpha| {
                    let mut g = CMat::zeros(map.rank(), map.rank());
                    for axis in 0..d {
                        let scale = Complex64::new(prefactor * lat.weights()[axis], 0.0);
                        if let Some(fv) = &diffs[site][axis] {
                            g -= (&fv[alpha]).map(|z| z * scale);
                        }
                        if let Some(back) = lat.backward(site, axis) {
                            if let Some(fv) = &diffs[back][axis] {
                                let u = gauge.link(back, axis).unwrap();
                                g += (u.adjoint() * &fv[alpha] * u).map(|z| z * scale);
                            }
                        }
                    }
                    if kappa != 0.0 {
                        let two_kappa = Complex64::new(2.0 * kappa, 0.0);
                        for beta in 0..n {
                            if beta == alpha {
                                continue;
                            }
                            let c = commutator(map.at(site, alpha), map.at(site, beta));
                            g += commutator(&c, map.at(site, beta)).map(|z| z * two_kappa);
                        }
                    }
                    hermitian_part(&g)
                })
                .collect()
        })
        .collect();
    Ok(BraneMap::new_unchecked(map.rank(), n, grads))
}

#[derive(Clone, Copy, Debug)]
pub struct MinimizeParams {
    pub tension: f64,
    pub kappa: f64,
    pub step: f64,
    pub max_iter: usize,
    pub defect_tol: f64,
    pub patience: usize,
}

impl Default for MinimizeParams {
    fn default() -> Self {
        MinimizeParams {
            tension: 1.0,
            kappa: 1.0,
            step: 0.05,
            max_iter: 4000,
            defect_tol: 1e-8,
            patience: 25,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeReport {
    pub map: BraneMap,
    pub history: Vec<f64>,
    pub defect: f64,
    pub iterations: usize,
    pub kappa_final: f64,
}

/// Fixed-step gradient descent on `energy + kappa * penalty`. The penalty
/// weight doubles whenever the objective plateaus while the commutativity
/// defect is still above `defect_tol`; a sustained increase of the objective
/// is reported as divergence.
pub fn minimize(
    map0: &BraneMap,
    gauge: &GaugeField,
    lat: &WorldvolumeLattice,
    params: MinimizeParams,
) -> Result<MinimizeReport, BraneError> {
    if !(params.step > 0.0) || params.patience == 0 || !(params.kappa >= 0.0) {
        return Err(BraneError::BadConfig(
            "need positive step, nonnegative kappa and a nonzero patience window".into(),
        ));
    }
    let mut map = map0.clone();
    let mut kappa = params.kappa;
    let mut obj = energy(&map, gauge, lat, params.tension)? + kappa * commutator_penalty(&map);
    let mut history = vec![obj];
    let mut anchor = obj;
    let mut since_anchor = 0usize;
    let mut doublings = 0u32;
    for it in 1..=params.max_iter {
        let g = energy_gradient(&map, gauge, lat, params.tension, kappa)?;
        let gnorm: f64 = (0..map.num_sites())
            .flat_map(|s| (0..map.coords()).map(move |a| (s, a)))
            .map(|(s, a)| frob(g.at(s, a)).powi(2))
            .sum::<f64>()
            .sqrt();
        let defect = commutativity_defect(&map);
        if gnorm <= 1e-11 * (1.0 + obj.abs()) && (kappa == 0.0 || defect <= params.defect_tol) {
            break;
        }
        let step = Complex64::new(params.step, 0.0);
        for site in 0..map.num_sites() {
            for alpha in 0..map.coords() {
                let update = map.at(site, alpha) - g.at(site, alpha).map(|z| z * step);
                *map.at_mut(site, alpha) = hermitian_part(&update);
            }
        }
        obj = energy(&map, gauge, lat, params.tension)? + kappa * commutator_penalty(&map);
        history.push(obj);
        if !obj.is_finite() {
            return Err(BraneError::Divergence {
                iteration: it,
                window: params.patience,
            });
        }
        if obj < anchor {
            anchor = obj;
            since_anchor = 0;
        } else {
            since_anchor += 1;
            if since_anchor >= params.patience {
                let risen = obj > anchor + 1e-9 * (1.0 + anchor.abs());
                if risen {
                    return Err(BraneError::Divergence {
                        iteration: it,
                        window: params.patience,
                    });
                }
                let defect_now = commutativity_defect(&map);
                if kappa > 0.0 && defect_now > params.defect_tol && doublings < 24 {
                    kappa *= 2.0;
                    doublings += 1;
                    obj = energy(&map, gauge, lat, params.tension)?
                        + kappa * commutator_penalty(&map);
                    anchor = obj;
                    since_anchor = 0;
                } else {
                    break;
                }
            }
        }
    }
    let defect = commutativity_defect(&map);
    Ok(MinimizeReport {
        iterations: history.len() - 1,
        map,
        history,
        defect,
        kappa_final: kappa,
    })
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, r: usize, scale: f64) -> CMat {
    let raw = CMat::from_fn(r, r, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    hermitian_part(&raw).map(|z| z * scale)
}

pub fn random_unitary(rng: &mut ChaCha8Rng, r: usize) -> CMat {
    let raw = CMat::from_fn(r, r, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    raw.qr().q()
}

/// Seeded random hermitian configuration on every site.
pub fn seeded_map(
    seed: u64,
    lat: &WorldvolumeLattice,
    r: usize,
    n: usize,
    scale: f64,
) -> BraneMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = (0..lat.num_sites())
        .map(|_| (0..n).map(|_| random_hermitian(&mut rng, r, scale)).collect())
        .collect();
    BraneMap::new_unchecked(r, n, m)
}

/// Conjugate the map and the links by a unitary `g` per site:
/// `m -> g m g^dagger`, `U_mu(x) -> g(x) U_mu(x) g(x+mu)^dagger`.
pub fn gauge_transform(
    map: &BraneMap,
    gauge: &GaugeField,
    lat: &WorldvolumeLattice,
    g: &[CMat],
) -> Result<(BraneMap, GaugeField), BraneError> {
    check_compat(map, gauge, lat)?;
    let r = map.rank();
    if g.len() != lat.num_sites() || g.iter().any(|m| m.nrows() != r || m.ncols() != r) {
        return Err(BraneError::ShapeMismatch(
            "need one r x r transformation per site".into(),
        ));
    }
    let m = (0..map.num_sites())
        .map(|site| {
            (0..map.coords())
                .map(|alpha| &g[site] * map.at(site, alpha) * g[site].adjoint())
                .collect()
        })
        .collect();
    let links = (0..lat.num_sites())
        .map(|site| {
            (0..lat.dim())
                .map(|axis| {
                    lat.forward(site, axis).map(|nb| {
                        &g[site] * gauge.link(site, axis).unwrap() * g[nb].adjoint()
                    })
                })
                .collect()
        })
        .collect();
    Ok((
        BraneMap::new_unchecked(r, map.coords(), m),
        GaugeField::new(lat, r, links, 1e-6)?,
    ))
}
