use dimer::snf;
use dimer::{
    arrow_monomial, center_presentation, dual_quiver, hexagonal_dimer, jacobian_consistency,
    lattice_data, nc_toric_data, perfect_matchings, square_dimer, toric_multiply,
    triple_hexagonal_dimer, validate_nc_toric_data, ConditionStatus, DimerError, DimerModel,
    ToricElement, ToricMonomial,
};
use exactmat::GaussRat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixtures() -> Vec<(DimerModel, usize, usize)> {
    // model, expected lattice rank, expected quiver vertex count
    vec![
        (hexagonal_dimer(), 3, 1),
        (square_dimer(), 4, 2),
        (triple_hexagonal_dimer(), 5, 3),
    ]
}

#[test]
fn lattice_ranks_follow_the_face_count() {
    for (d, rank, q0) in fixtures() {
        let q = dual_quiver(&d).unwrap();
        let lat = lattice_data(&q).unwrap();
        assert_eq!(lat.rank, rank);
        assert_eq!(lat.rank, q0 + 2);
        assert_eq!(lat.rank_d1, q.faces.len() - 1);
    }
}

#[test]
fn vertex_differences_kernel_is_the_constants() {
    for (d, _, q0) in fixtures() {
        let q = dual_quiver(&d).unwrap();
        let ker = snf::kernel(&q.d0());
        assert_eq!(ker.len(), 1);
        assert_eq!(snf::primitive(&ker[0]).unwrap(), vec![1; q0]);
    }
}

#[test]
fn matchings_sum_to_one_on_every_face() {
    for (d, _, _) in fixtures() {
        let q = dual_quiver(&d).unwrap();
        let d1 = q.d1();
        for m in perfect_matchings(&d, 100).unwrap() {
            let mut xi = vec![0i64; q.arrows.len()];
            for e in m {
                xi[e] = 1;
            }
            assert_eq!(d1.mul_vec(&xi), vec![1; q.faces.len()]);
        }
    }
}

#[test]
fn arrow_classes_are_graded_by_their_ends() {
    for (d, _, q0) in fixtures() {
        let q = dual_quiver(&d).unwrap();
        let lat = lattice_data(&q).unwrap();
        for a in &q.arrows {
            let grading = lat.boundary.mul_vec(&lat.arrow_classes[a.id]);
            let mut expected = vec![0i64; q0];
            expected[a.head] += 1;
            expected[a.tail] -= 1;
            assert_eq!(grading, expected, "arrow {}", a.id);
        }
    }
}

#[test]
fn consistency_reports_pass_for_the_small_fixtures() {
    for d in [hexagonal_dimer(), square_dimer()] {
        let data = nc_toric_data(&d, 100).unwrap();
        for rep in validate_nc_toric_data(&data, 3) {
            assert_eq!(rep.status, ConditionStatus::Pass, "{}: {}", rep.name, rep.detail);
        }
    }
}

#[test]
fn consistency_reports_do_not_fail_for_the_triple_hexagon() {
    let data = nc_toric_data(&triple_hexagonal_dimer(), 100).unwrap();
    let reports = validate_nc_toric_data(&data, 2);
    for rep in &reports {
        assert_ne!(rep.status, ConditionStatus::Fail, "{}: {}", rep.name, rep.detail);
    }
    assert_eq!(reports[0].status, ConditionStatus::Pass);
    assert_eq!(reports[1].status, ConditionStatus::Pass);
}

#[test]
fn degenerate_rays_fail_strong_convexity() {
    let d = hexagonal_dimer();
    let mut data = nc_toric_data(&d, 100).unwrap();
    data.cone = dimer::Cone::new(3, vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0]]).unwrap();
    let reports = validate_nc_toric_data(&data, 2);
    assert_eq!(reports[0].name, "strong_convexity");
    assert_eq!(reports[0].status, ConditionStatus::Fail);
}

#[test]
fn hexagon_center_is_a_free_semigroup_on_three_generators() {
    let data = nc_toric_data(&hexagonal_dimer(), 100).unwrap();
    let pres = center_presentation(&data, 6).unwrap();
    assert_eq!(pres.generators.len(), 3);
    assert!(pres.relations.is_empty());
    // each generator pairs with exactly one matching ray, and each ray is hit
    let mut hits = Vec::new();
    for g in &pres.generators {
        let p = data.cone.pairings(g);
        assert_eq!(p.iter().sum::<i64>(), 1);
        hits.push(p.iter().position(|&x| x == 1).unwrap());
    }
    hits.sort_unstable();
    assert_eq!(hits, vec![0, 1, 2]);
}

#[test]
fn square_center_is_the_quadric_cone() {
    let data = nc_toric_data(&square_dimer(), 100).unwrap();
    let pres = center_presentation(&data, 6).unwrap();
    assert_eq!(pres.generators.len(), 4);
    assert_eq!(pres.relations.len(), 1);
    let z = &pres.relations[0];
    let mut signs = z.clone();
    signs.sort_unstable();
    assert_eq!(signs, vec![-1, -1, 1, 1]);
    for t in 0..data.lattice.rank {
        let s: i64 = z.iter().zip(&pres.generators).map(|(c, g)| c * g[t]).sum();
        assert_eq!(s, 0);
    }
}

#[test]
fn triple_hexagon_center_matches_the_cubic_invariants() {
    let data = nc_toric_data(&triple_hexagonal_dimer(), 100).unwrap();
    let pres = center_presentation(&data, 120).unwrap();
    assert_eq!(pres.generators.len(), 10);
    assert_eq!(pres.relations.len(), 7);
    for g in &pres.generators {
        assert_eq!(data.lattice.boundary.mul_vec(g), vec![0; data.num_blocks]);
        assert!(data.cone.in_dual(g));
    }
    for z in &pres.relations {
        for t in 0..data.lattice.rank {
            let s: i64 = z.iter().zip(&pres.generators).map(|(c, g)| c * g[t]).sum();
            assert_eq!(s, 0);
        }
    }
}

#[test]
fn undersized_degree_cap_is_not_saturated() {
    let data = nc_toric_data(&square_dimer(), 100).unwrap();
    assert!(matches!(center_presentation(&data, 5), Err(DimerError::NotSaturated(5))));
    let data = nc_toric_data(&hexagonal_dimer(), 100).unwrap();
    assert!(matches!(center_presentation(&data, 2), Err(DimerError::NotSaturated(2))));
}

#[test]
fn monomials_compose_blockwise_or_refuse() {
    let data = nc_toric_data(&square_dimer(), 100).unwrap();
    let (back, forth) = {
        let a0 = arrow_monomial(&data, 0);
        let a1 = arrow_monomial(&data, 1);
        (a0, a1)
    };
    assert_ne!(back.src, back.dst);
    let loop_mono = toric_multiply(&back, &forth).unwrap();
    assert_eq!(loop_mono.src, back.src);
    assert_eq!(loop_mono.dst, forth.dst);
    let sum: Vec<i64> =
        back.class.iter().zip(&forth.class).map(|(x, y)| x + y).collect();
    assert_eq!(loop_mono.class, sum);
    assert_eq!(
        data.lattice.boundary.mul_vec(&loop_mono.class),
        vec![0; data.num_blocks]
    );

    // two arrows pointing the same way cannot compose
    let parallel = data
        .arrow_ends
        .iter()
        .position(|&ends| ends == data.arrow_ends[0])
        .map(|_| {
            let mate = (1..data.arrow_ends.len())
                .find(|&k| data.arrow_ends[k] == data.arrow_ends[0])
                .unwrap();
            arrow_monomial(&data, mate)
        })
        .unwrap();
    assert!(matches!(
        toric_multiply(&back, &parallel),
        Err(DimerError::BlockMismatch(_, _, _, _))
    ));
}

#[test]
fn monomial_validation_checks_grading_and_positivity() {
    let data = nc_toric_data(&square_dimer(), 100).unwrap();
    let a1 = arrow_monomial(&data, 1);
    assert!(ToricMonomial::new(&data, a1.src, a1.dst, a1.class.clone()).is_ok());
    assert!(ToricMonomial::new(&data, a1.dst, a1.src, a1.class.clone()).is_err());
    let mut doubled: Vec<i64> = a1.class.iter().map(|x| 2 * x).collect();
    assert!(ToricMonomial::new(&data, a1.src, a1.dst, doubled.clone()).is_err());
    // fix the grading back but leave a negative pairing
    let a3 = (0..data.arrow_ends.len())
        .find(|&k| k != 1 && data.arrow_ends[k] == data.arrow_ends[1])
        .unwrap();
    let a3 = arrow_monomial(&data, a3);
    for (d, s) in doubled.iter_mut().zip(&a3.class) {
        *d -= s;
    }
    assert_eq!(
        data.lattice.boundary.mul_vec(&doubled),
        data.lattice.boundary.mul_vec(&a1.class)
    );
    assert!(ToricMonomial::new(&data, a1.src, a1.dst, doubled).is_err());
}

#[test]
fn the_unit_element_is_neutral_for_random_elements() {
    let data = nc_toric_data(&triple_hexagonal_dimer(), 100).unwrap();
    let unit = ToricElement::<GaussRat>::unit(&data);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..8 {
        let mut x = ToricElement::<GaussRat>::zero();
        for _ in 0..4 {
            let a = rng.random_range(0..data.arrow_ends.len());
            let b = rng.random_range(0..data.arrow_ends.len());
            let coeff = GaussRat::from_int(rng.random_range(-3..=3));
            let term = match toric_multiply(&arrow_monomial(&data, a), &arrow_monomial(&data, b)) {
                Ok(m) => ToricElement::monomial(m, coeff),
                Err(_) => ToricElement::monomial(arrow_monomial(&data, a), coeff),
            };
            x = x.add(&term);
        }
        assert_eq!(unit.mul(&x), x);
        assert_eq!(x.mul(&unit), x);
        for (m, _) in x.mul(&x).terms() {
            assert!(ToricMonomial::new(&data, m.src, m.dst, m.class.clone()).is_ok());
        }
    }
}

#[test]
fn superpotential_derivatives_agree_on_the_fixtures() {
    for (d, _, _) in fixtures() {
        let q = dual_quiver(&d).unwrap();
        let lat = lattice_data(&q).unwrap();
        assert!(jacobian_consistency(&q, &lat).is_empty());
    }
}

#[test]
fn corrupted_arrow_classes_break_the_derivative_check() {
    let q = dual_quiver(&triple_hexagonal_dimer()).unwrap();
    let mut lat = lattice_data(&q).unwrap();
    lat.arrow_classes[4][0] += 1;
    let report = jacobian_consistency(&q, &lat);
    assert!(!report.is_empty());
    assert!(report.iter().all(|v| v.kind == "jacobian_mismatch"));
}
