use sturm_core::ball::*;
use sturm_core::complex::*;
use sturm_core::designer::*;
use sturm_core::invariants::*;
use sturm_core::meander::*;

fn all_sturm(max: usize) -> Vec<Invariants> {
    (1..=max)
        .step_by(2)
        .flat_map(|n| enumerate_sturm(n, 13).unwrap())
        .map(|p| Invariants::new(&Orders::from_permutation(&p)).unwrap())
        .collect()
}

fn planar(inv: &Invariants) -> bool {
    (1..=inv.orders().n()).all(|v| inv.morse(v) <= 2)
}

#[test]
fn ball_roundtrip_up_to_thirteen() {
    let mut balls = 0;
    for inv in all_sturm(13) {
        if !is_sturm_3ball(&inv) {
            continue;
        }
        balls += 1;
        let sigma = inv.orders().sigma();
        let rec = complex_from_sigma(&inv).unwrap_or_else(|e| panic!("{sigma}: {e}"));
        let report = validate_template(&rec.complex, &rec.decoration);
        assert!(report.passed(), "{sigma}: {:?}", report.messages);
        assert_eq!(
            formal_hemispheres(&rec.complex, &rec.decoration).unwrap(),
            rec.hemispheres
        );
        let pair = szs_pair(&rec.complex).unwrap_or_else(|e| panic!("{sigma}: {e}"));
        assert_eq!(pair.sigma, sigma);
        assert!(roundtrip(&sigma));
        let check = verify_scoop_vs_hemisphere(&inv).unwrap();
        assert!(check.passed(), "{sigma}: {check:?}");
        let designed = Invariants::new(&pair.orders()).unwrap();
        assert!(check_traversal_table(&designed).unwrap().passed());
    }
    assert_eq!(balls, 1 + 4 + 16 + 64);
}

#[test]
fn planar_roundtrip_up_to_thirteen() {
    let mut count = 0;
    for inv in all_sturm(13).iter().filter(|i| planar(i)) {
        count += 1;
        let sigma = inv.orders().sigma();
        let c = planar_complex_from_sigma(inv).unwrap();
        let r = validate_planar(&c).unwrap();
        assert!(r.passed(), "{sigma}: {r:?}");
        assert!(planar_roundtrip(&sigma), "{sigma}");
    }
    assert_eq!(count, 1 + 1 + 2 + 6 + 22 + 92 + 422);
}

#[test]
fn reconstructed_decoration_is_inferred() {
    for inv in all_sturm(11).iter().filter(|i| is_sturm_3ball(i)) {
        let rec = complex_from_sigma(inv).unwrap();
        let mut bare = rec.complex.clone();
        bare.decoration = None;
        let found = infer_decorations(&bare).unwrap();
        assert!(found.contains(&rec.decoration), "{}", inv.orders().sigma());
    }
}

fn mirror(c: &CellComplex) -> CellComplex {
    let mut m = c.clone();
    m.decoration = None;
    for f in &mut m.faces {
        f.cycle.reverse();
        f.cycle.rotate_left(1);
    }
    m
}

fn faces_of(c: &CellComplex, cells: &[usize]) -> Vec<usize> {
    cells
        .iter()
        .copied()
        .filter(|x| c.faces.iter().any(|f| f.id == *x))
        .collect()
}

#[test]
fn swapped_hemispheres_give_a_different_permutation() {
    let f: Permutation = "1 12 3 4 11 6 7 10 9 8 5 2 13".parse().unwrap();
    let g: Permutation = "1 12 9 4 5 8 7 6 3 10 11 2 13".parse().unwrap();
    let inv = Invariants::new(&Orders::from_permutation(&f)).unwrap();
    let rec = complex_from_sigma(&inv).unwrap();
    let east = faces_of(
        &rec.complex,
        &geography(&rec.complex, &rec.decoration).unwrap().east,
    );
    let m = mirror(&rec.complex);
    let mut designed = Vec::new();
    for d in infer_decorations(&m).unwrap() {
        let west = faces_of(&m, &geography(&m, &d).unwrap().west);
        if west != east {
            continue;
        }
        let mut c = m.clone();
        c.decoration = Some(d);
        designed.push(szs_pair(&c).unwrap().sigma);
    }
    assert!(designed.contains(&g));
    let t = f.trivial_equivalences();
    for s in [&f, &t.inverse, &t.kappa_conjugate, &t.both] {
        assert_ne!(s, &g);
    }
    let ginv = Invariants::new(&Orders::from_permutation(&g)).unwrap();
    assert!(is_sturm_3ball(&ginv));
}

#[test]
fn corrupted_templates_are_rejected() {
    let inv = Invariants::new(&sturm_core::fixtures::octahedron_orders()).unwrap();
    let rec = complex_from_sigma(&inv).unwrap();
    // swapping the meridian roles breaks the orientation of the split
    let mut c = rec.complex.clone();
    let d = c.decoration.as_mut().unwrap();
    std::mem::swap(&mut d.we, &mut d.ew);
    assert!(szs_pair(&c).is_err());
    // a missing decoration is rejected before the search
    let mut bare = rec.complex.clone();
    bare.decoration = None;
    assert!(matches!(
        szs_pair(&bare),
        Err(sturm_core::Error::InvalidComplex(_))
    ));
}
