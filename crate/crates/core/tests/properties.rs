use std::sync::OnceLock;

use ndds_core::epsets::EPSet;
use ndds_core::oracle::{brute_family_membership, brute_hitting, corpus, random_epset, CorpusEntry, CorpusSpec};
use ndds_core::spaces::{
    image, intersect, is_empty, meets, minimal_basis, preimage, rat, Arc, ArcSet, Cylinder, CylinderSet, FiniteSubset,
    MapDescriptor, Rational, ShiftPoint,
};
use ndds_core::systems::fixtures;
use ndds_core::transitivity::{hitting_set, is_transitive, is_vector_transitive, is_weakly_mixing};
use ndds_core::{composed, ep_compose, tower, ComposedForm, OpenSet, Point, Space, SystemDescriptor, Vector, Verdict};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DENOM: i64 = 24;

fn arc() -> impl Strategy<Value = Arc> {
    (0..DENOM, 1..DENOM).prop_map(|(lo, len)| Arc::new(rat(lo, DENOM), rat((lo + len) % DENOM, DENOM)).unwrap())
}

fn arc_set() -> impl Strategy<Value = ArcSet> {
    prop::collection::vec(arc(), 0..4).prop_map(ArcSet::new)
}

fn cylinder() -> impl Strategy<Value = Cylinder> {
    (-4i64..4, prop::collection::vec(0u8..2, 1..4)).prop_map(|(lo, w)| Cylinder::new(lo, w, 2).unwrap())
}

fn cyl_set() -> impl Strategy<Value = CylinderSet> {
    prop::collection::vec(cylinder(), 0..4).prop_map(|cs| CylinderSet::new(2, cs))
}

fn finite_set() -> impl Strategy<Value = FiniteSubset> {
    (0u64..64).prop_map(|m| FiniteSubset::new(6, m).unwrap())
}

fn vector(p_max: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(1u64..=3, 1..=p_max).prop_map(|c| Vector::new(c).unwrap())
}

fn epset() -> impl Strategy<Value = EPSet> {
    any::<u64>().prop_map(|seed| random_epset(&mut ChaCha8Rng::seed_from_u64(seed), 20, 24))
}

/// Sample angles: a fine grid plus points straddling every grid endpoint.
fn sample_angles() -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..4 * DENOM).map(|i| rat(2 * i + 1, 8 * DENOM)).collect();
    out.extend((0..DENOM).map(|i| rat(i, DENOM)));
    out
}

fn sample_words(seed: u64) -> Vec<ShiftPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..64)
        .map(|_| {
            let core: Vec<u8> = (0..24).map(|_| rng.gen_range(0..2)).collect();
            ShiftPoint::new(vec![rng.gen_range(0..2)], core, -12, vec![rng.gen_range(0..2)]).unwrap()
        })
        .collect()
}

fn sample_points(set: &OpenSet) -> Vec<Point> {
    match set {
        OpenSet::Arcs(_) => sample_angles().into_iter().map(Point::Angle).collect(),
        OpenSet::Cylinders(_) => sample_words(7).into_iter().map(Point::Symbolic).collect(),
        OpenSet::Finite(f) => (0..f.size()).map(Point::Element).collect(),
    }
}

fn check_intersection_laws(a: &OpenSet, b: &OpenSet, c: &OpenSet) -> Result<(), TestCaseError> {
    let ab = intersect(a, b).unwrap();
    prop_assert_eq!(&ab, &intersect(b, a).unwrap());
    prop_assert_eq!(
        &intersect(&ab, c).unwrap(),
        &intersect(a, &intersect(b, c).unwrap()).unwrap()
    );
    prop_assert_eq!(&intersect(a, a).unwrap(), a);
    prop_assert_eq!(is_empty(&ab), !meets(a, b).unwrap());
    for x in sample_points(a) {
        let both = a.contains_point(&x).unwrap() && b.contains_point(&x).unwrap();
        prop_assert_eq!(ab.contains_point(&x).unwrap(), both);
    }
    Ok(())
}

fn small_corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let spec = CorpusSpec {
            exhaustive_n: 2,
            exhaustive_q: 2,
            samples: 40,
            sample_n: 3,
            sample_q: 2,
            ..CorpusSpec::default()
        };
        corpus(&spec).unwrap()
    })
}

fn finite_corpus() -> Vec<&'static CorpusEntry> {
    small_corpus().iter().filter(|e| e.system.is_finite()).collect()
}

fn finite_points(space: &Space) -> Vec<Point> {
    match space {
        Space::Finite { n } => (0..*n).map(Point::Element).collect(),
        Space::Product(fs) => fs
            .iter()
            .fold(vec![Vec::new()], |acc, f| {
                acc.into_iter()
                    .flat_map(|prefix| {
                        finite_points(f).into_iter().map(move |x| {
                            let mut p = prefix.clone();
                            p.push(x);
                            p
                        })
                    })
                    .collect()
            })
            .into_iter()
            .map(Point::Tuple)
            .collect(),
        other => panic!("not finite: {other}"),
    }
}

fn status(v: &Verdict) -> (bool, bool) {
    (v.is_proven(), v.is_refuted())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn arc_intersection_laws(a in arc_set(), b in arc_set(), c in arc_set()) {
        check_intersection_laws(&OpenSet::Arcs(a), &OpenSet::Arcs(b), &OpenSet::Arcs(c))?;
    }

    #[test]
    fn cylinder_intersection_laws(a in cyl_set(), b in cyl_set(), c in cyl_set()) {
        check_intersection_laws(&OpenSet::Cylinders(a), &OpenSet::Cylinders(b), &OpenSet::Cylinders(c))?;
    }

    #[test]
    fn finite_intersection_laws(a in finite_set(), b in finite_set(), c in finite_set()) {
        check_intersection_laws(&OpenSet::Finite(a), &OpenSet::Finite(b), &OpenSet::Finite(c))?;
    }

    #[test]
    fn canonical_forms_are_fixpoints(a in arc_set(), c in cyl_set()) {
        // A covering union collapses to the distinguished full set.
        let again = if a.is_full() { ArcSet::full() } else { ArcSet::new(a.arcs().to_vec()) };
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(&CylinderSet::new(2, c.components().to_vec()), &c);
    }

    #[test]
    fn shift_images_compose(a in cyl_set(), j in -8i64..=8, k in -8i64..=8) {
        let a = OpenSet::Cylinders(a);
        let twice = image(&MapDescriptor::ShiftPower(j), &image(&MapDescriptor::ShiftPower(k), &a).unwrap()).unwrap();
        prop_assert_eq!(twice, image(&MapDescriptor::ShiftPower(j + k), &a).unwrap());
    }

    #[test]
    fn image_and_preimage_are_adjoint_on_cylinders(x in cyl_set(), y in cyl_set(), e in -8i64..=8) {
        let (x, y) = (OpenSet::Cylinders(x), OpenSet::Cylinders(y));
        let m = MapDescriptor::ShiftPower(e);
        prop_assert_eq!(
            is_empty(&intersect(&image(&m, &x).unwrap(), &y).unwrap()),
            is_empty(&intersect(&x, &preimage(&m, &y).unwrap()).unwrap())
        );
    }

    #[test]
    fn image_and_preimage_are_adjoint_on_arcs(x in arc_set(), y in arc_set(), e in -3i64..=3, p in 2u32..=3) {
        let (x, y) = (OpenSet::Arcs(x), OpenSet::Arcs(y));
        let m = MapDescriptor::CirclePower { e, p };
        prop_assert_eq!(
            is_empty(&intersect(&image(&m, &x).unwrap(), &y).unwrap()),
            is_empty(&intersect(&x, &preimage(&m, &y).unwrap()).unwrap())
        );
    }

    #[test]
    fn image_and_preimage_are_adjoint_on_finite_sets(
        x in finite_set(),
        y in finite_set(),
        table in prop::collection::vec(0usize..6, 6),
    ) {
        let (x, y) = (OpenSet::Finite(x), OpenSet::Finite(y));
        let m = MapDescriptor::FiniteFunc(table);
        prop_assert_eq!(
            is_empty(&intersect(&image(&m, &x).unwrap(), &y).unwrap()),
            is_empty(&intersect(&x, &preimage(&m, &y).unwrap()).unwrap())
        );
    }

    #[test]
    fn circle_images_scale_length(a in arc(), many in arc_set(), e in -3i64..=3, p in 2u32..=3) {
        let scale = Rational::from_integer((p as i64).pow(e.unsigned_abs() as u32).into());
        let single = ArcSet::new(vec![a.clone()]);
        let img = single.image_power(e, p);
        let one = Rational::from_integer(1.into());
        if e < 0 {
            prop_assert!(img.total_length() <= single.total_length());
            prop_assert!(many.image_power(e, p).total_length() <= many.total_length());
        } else {
            let grown = a.length() * scale;
            if grown >= one {
                prop_assert!(img.is_full());
            } else {
                prop_assert_eq!(img.total_length(), grown);
            }
        }
    }

    #[test]
    fn epset_algebra_matches_bitmasks(f in epset(), g in epset(), d in 1u64..=6) {
        const H: usize = 10_000;
        let (fb, gb) = (f.to_bits(H), g.to_bits(H));
        let check = |set: &EPSet, want: &dyn Fn(usize) -> bool| set.to_bits(H).iter().enumerate().all(|(i, &b)| b == want(i));
        prop_assert!(check(&f.union(&g), &|i| fb[i] || gb[i]));
        prop_assert!(check(&f.intersect(&g), &|i| fb[i] && gb[i]));
        prop_assert!(check(&f.complement(), &|i| !fb[i]));
        let dilated = f.dilate_preimage(d);
        prop_assert!((1..=H as u64 / d).all(|m| dilated.contains(m) == fb[(m * d) as usize - 1]));
        prop_assert_eq!(f.is_subset(&g), (0..H).all(|i| !fb[i] || gb[i]));
        prop_assert_eq!(f.is_empty(), !fb.iter().any(|&b| b));
        prop_assert_eq!(f.is_cofinite(), fb[H / 2..].iter().all(|&b| b));
    }

    #[test]
    fn epset_literal_round_trips(f in epset()) {
        prop_assert_eq!(&f.to_string().parse::<EPSet>().unwrap(), &f);
        let rebuilt = EPSet::from_fn(f.preperiod() + 3, f.period() * 2, |n| f.contains(n));
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn family_is_hereditary_upward(f in epset(), extra in prop::collection::vec(any::<bool>(), 44), a in vector(3)) {
        // Same presentation as f, so the superset keeps a small period.
        let (t, q) = (f.preperiod() as u64, f.period() as u64);
        let g = EPSet::from_fn(t as usize, q as usize, |n| {
            f.contains(n) || if n <= t { extra[n as usize - 1] } else { extra[20 + (n % q) as usize] }
        });
        prop_assert!(f.is_subset(&g));
        prop_assert!(!f.in_family(&a) || g.in_family(&a));
    }

    #[test]
    fn family_is_proper(a in vector(3)) {
        prop_assert!(!EPSet::empty().in_family(&a));
        prop_assert!(EPSet::naturals().in_family(&a));
    }

    #[test]
    fn cofinite_sets_belong_to_every_family(f in epset(), a in vector(3)) {
        let cofinite = f.union(&EPSet::finite(&[1, 2, 3]).complement());
        prop_assert!(cofinite.in_family(&a));
    }

    #[test]
    fn single_component_family_matches_brute_force(f in epset(), a in 1u64..=4) {
        let q = f.period() as u64;
        let bound = (10 * q).max(f.preperiod() as u64 + q);
        let bits = f.to_bits((bound * 5) as usize);
        let a = Vector::new(vec![a]).unwrap();
        prop_assert_eq!(f.in_family(&a), brute_family_membership(&bits, &a, bound, bound));
    }

    #[test]
    fn family_matches_brute_force_up_to_three_components(seed in any::<u64>(), a in vector(3)) {
        let f = random_epset(&mut ChaCha8Rng::seed_from_u64(seed), 6, 12);
        let bound = f.preperiod() as u64 + f.period() as u64;
        let bits = f.to_bits((bound * 4 + 1) as usize);
        prop_assert_eq!(f.in_family(&a), brute_family_membership(&bits, &a, bound, bound));
    }

    #[test]
    fn dilations_compose(f in epset(), a in 1u64..=6, b in 1u64..=6) {
        prop_assert_eq!(f.dilate_preimage(a).dilate_preimage(b), f.dilate_preimage(a * b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iterates_compose_in_blocks(i in any::<prop::sample::Index>(), n in 1u64..=12, m in 0u64..=12) {
        let sys = &i.get(small_corpus()).system;
        let it = SystemDescriptor::iterate(sys.clone(), n).unwrap();
        prop_assert_eq!(composed(&it, m), composed(sys, n * m));
    }

    #[test]
    fn vector_products_compose_coordinatewise(
        i in any::<prop::sample::Index>(),
        a in prop::collection::vec(1u64..=4, 1..=4),
        m in 0u64..=50,
    ) {
        let sys = &i.get(small_corpus()).system;
        let a = Vector::new(a).unwrap();
        let vp = SystemDescriptor::vector_product(sys.clone(), a.clone());
        let want = ComposedForm::Tuple(a.components().iter().map(|&aj| composed(sys, aj * m)).collect());
        prop_assert_eq!(composed(&vp, m), want);
    }

    #[test]
    fn eventually_periodic_presentation_predicts_forms(i in any::<prop::sample::Index>(), k in 1u64..=3) {
        let base = &i.get(small_corpus()).system;
        for sys in [base.clone(), tower(base.clone(), k).unwrap(), SystemDescriptor::iterate(base.clone(), k).unwrap()] {
            let ep = ep_compose(&sys).unwrap();
            let horizon = (ep.preperiod + 5 * ep.period) as u64;
            for n in 1..=horizon {
                prop_assert_eq!(ep.form_at(n), composed(&sys, n), "{} at n={}", sys, n);
            }
        }
    }

    #[test]
    fn tower_floors_project_to_the_base(i in any::<prop::sample::Index>(), k in 1u64..=4, m in 0u64..=12) {
        let sys = &i.get(&finite_corpus()).system;
        let tw = tower(sys.clone(), k).unwrap();
        let (space, tspace) = (sys.space(), tw.space());
        let (base, lifted) = (composed(sys, m), composed(&tw, k * m));
        for x in finite_points(&space) {
            let want = base.apply(&space, &x).unwrap();
            for floor in 0..k as usize {
                let got = lifted.apply(&tspace, &Point::Tuple(vec![x.clone(), Point::Element(floor)])).unwrap();
                prop_assert_eq!(got, Point::Tuple(vec![want.clone(), Point::Element(floor)]));
            }
        }
    }

    #[test]
    fn hitting_sets_match_simulation(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let sys = &i.get(&finite_corpus()).system;
        let basis = minimal_basis(&sys.space(), 1).unwrap();
        let (a, b) = (j.get(&basis), k.get(&basis));
        let exact = hitting_set(sys, a, b).unwrap();
        let ep = ep_compose(sys).unwrap();
        let horizon = exact.preperiod().max(ep.preperiod) + 5 * exact.period().max(ep.period);
        let brute = brute_hitting(sys, a, b, horizon).unwrap();
        prop_assert_eq!(exact.to_bits(horizon), brute);
    }

    #[test]
    fn definitions_agree_where_they_coincide(i in any::<prop::sample::Index>()) {
        let entry = i.get(small_corpus());
        let (sys, r) = (&entry.system, entry.resolution);
        let one = is_vector_transitive(sys, &Vector::ones(1), r).unwrap();
        let plain = is_transitive(sys, r).unwrap();
        prop_assert_eq!(status(&one), status(&plain));
        let pair = is_vector_transitive(sys, &Vector::ones(2), r).unwrap();
        let weak = is_weakly_mixing(sys, 2, r).unwrap();
        prop_assert_eq!(status(&pair), status(&weak));
        for v in [one, plain, pair, weak] {
            prop_assert!(v.to_string().contains(&format!("@res={r}")), "{}", v);
        }
    }
}

#[test]
fn fixtures_belong_to_the_corpus() {
    let names: Vec<String> = small_corpus().iter().map(|e| e.system.to_string()).collect();
    for f in [fixtures::swing_shift(4), fixtures::pair_growing_circle(2)] {
        assert!(names.contains(&f.to_string()), "{f}");
    }
}
