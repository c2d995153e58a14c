use kklab::{norm_group_finite, run_suite, ExperimentConfig, Suite};
use kklab_core::field::make_field;
use kklab_core::lang::normic_form;
use kklab_core::points::Variety;
use kklab_core::poly::{form, Hypersurface};

fn variety(f: kklab_core::poly::Form) -> Variety {
    Variety::hypersurface(Hypersurface::new(f).unwrap())
}

#[test]
fn sum_of_two_squares_over_f3() {
    let f3 = make_field(3, 1).unwrap();
    let g = norm_group_finite(&variety(form(&f3, 2, &[(1, &[2, 0]), (1, &[0, 2])])), 4, 1_000_000).unwrap();
    assert_eq!(g.degrees_with_points, vec![2, 4]);
    assert!(g.full && !g.inconclusive);
    assert_eq!(g.order, 2);
}

#[test]
fn rational_point_gives_full_group() {
    for (p, n) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
        let k = make_field(p, n).unwrap();
        let g = norm_group_finite(&variety(form(&k, 2, &[(1, &[1, 1])])), 1, 1_000_000).unwrap();
        assert!(g.full);
        assert_eq!(g.order, k.order() as u64 - 1);
    }
}

#[test]
fn no_point_is_inconclusive() {
    let f2 = make_field(2, 1).unwrap();
    let f8 = make_field(2, 3).unwrap();
    let cubic = normic_form(&f8, &f2, 1).unwrap();
    let g = norm_group_finite(&Variety::hypersurface(cubic), 2, 1_000_000).unwrap();
    assert!(g.inconclusive && !g.full);
    assert!(g.generators.is_empty() && g.degrees_with_points.is_empty());
    let config = ExperimentConfig::from_text(
        Suite::NormGroupFinite,
        "seed = 1\nfield = 2\nform = X0^3 + X0*X1^2 + X1^3\nbound = 2",
    )
    .unwrap();
    assert!(run_suite(&config).unwrap().passed());
}
