use super::*;
use crate::codec::corpus;
use crate::coloring::count_colorings;
use crate::diagram::Side;

fn trefoil3() -> ColoredDiagram {
    let d = corpus::entry("trefoil").unwrap().diagram();
    ColoredDiagram::from_fox(d, &FoxColoring::new(3, vec![0, 1, 2])).unwrap()
}

fn check(cd: &ColoredDiagram) {
    assert!(cd.diagram.validate().is_valid(), "{:?}", cd.diagram.validate());
    assert_eq!(cd.diagram.euler_characteristic().unwrap(), 2);
    assert!(cd.is_valid_coloring());
}

fn all_sides(cd: &ColoredDiagram) -> Vec<Side> {
    cd.diagram.semiarc_ids().flat_map(|s| [Side::new(s, false), Side::new(s, true)]).collect()
}

#[test]
fn r1_add_and_remove() {
    let cd = trefoil3();
    for side in all_sides(&cd) {
        for over_first in [true, false] {
            let m = Move::R1Add { side, over_first };
            let out = cd.apply(&m).unwrap();
            check(&out);
            assert_eq!(out.diagram.crossing_count(), 4);
            let inv = inverse(&cd, &m, &out).expect("inverse exists");
            assert!(matches!(inv, Move::R1Remove { .. }));
            assert_eq!(out.apply(&inv).unwrap().checksum(), cd.checksum());
        }
    }
}

#[test]
fn r1_on_unknot() {
    let d = Diagram::unknot();
    let cd = ColoredDiagram::from_fox(d, &FoxColoring::new(17, vec![7])).unwrap();
    let out = cd.apply(&Move::R1Add { side: Side::new(SemiArcId(0), false), over_first: true }).unwrap();
    check(&out);
    assert_eq!(out.crossing_colors(CrossingId(0)), (7, 7, 7));
    assert_eq!(count_colorings(&out.diagram, 17).unwrap(), 17);
    let back = out.apply(&Move::R1Remove { crossing: CrossingId(0) }).unwrap();
    assert!(back.diagram.is_unknot_loop());
    assert_eq!(back.checksum(), cd.checksum());
}

#[test]
fn kink_is_r1_removable() {
    let d = corpus::entry("kink").unwrap().diagram();
    assert!(applicable(&d, &Move::R1Remove { crossing: CrossingId(0) }).unwrap());
    assert!(!applicable(&trefoil3().diagram, &Move::R1Remove { crossing: CrossingId(0) }).unwrap());
    assert!(matches!(applicable(&d, &Move::R1Remove { crossing: CrossingId(5) }), Err(MoveError::UnknownCrossing(_))));
}

#[test]
fn every_shared_face_push_is_sound() {
    let cd = trefoil3();
    let mut n = 0;
    for strand in all_sides(&cd) {
        for target in all_sides(&cd) {
            for m in [Move::R2PushOver { strand, target }, Move::R2PushUnder { strand, target }] {
                if !cd.applicable(&m).unwrap() {
                    continue;
                }
                n += 1;
                let out = cd.apply(&m).unwrap();
                check(&out);
                assert_eq!(count_colorings(&out.diagram, 3).unwrap(), 9);
                let inv = inverse(&cd, &m, &out).expect("inverse exists");
                assert!(matches!(inv, Move::R2Remove { .. }), "{inv}");
            }
        }
    }
    assert!(n > 0);
}

#[test]
fn push_over_colors() {
    let cd = corpus::entry("T(2,17)").unwrap().colored17().unwrap();
    // Find a strand colored 0 and a target colored 16 on a shared face.
    let d = &cd.diagram;
    let mut done = false;
    'outer: for strand in all_sides(&cd) {
        for target in all_sides(&cd) {
            let m = Move::R2PushOver { strand, target };
            if cd.color(strand.semiarc) == 0 && cd.color(target.semiarc) == 16 && cd.applicable(&m).unwrap() {
                let out = cd.apply(&m).unwrap();
                check(&out);
                let fresh: Vec<_> = out.diagram.crossing_ids().filter(|x| !d.has_crossing(*x)).collect();
                let mut got: Vec<_> = fresh.iter().map(|&x| out.crossing_colors(x)).collect();
                got.sort();
                assert_eq!(got, vec![(1, 0, 16), (16, 0, 1)]);
                done = true;
                break 'outer;
            }
        }
    }
    assert!(done);
}

#[test]
fn push_with_equal_colors_is_monochrome() {
    let cd = ColoredDiagram::from_fox(corpus::entry("trefoil").unwrap().diagram(), &FoxColoring::constant(17, 3, 5))
        .unwrap();
    let side = |s| Side::new(SemiArcId(s), false);
    let m = all_sides(&cd)
        .into_iter()
        .flat_map(|a| all_sides(&cd).into_iter().map(move |b| Move::R2PushOver { strand: a, target: b }))
        .find(|m| cd.applicable(m).unwrap())
        .unwrap();
    let out = cd.apply(&m).unwrap();
    assert_eq!(out.palette(), BTreeSet::from([5]));
    let _ = side(0);
}

#[test]
fn non_adjacent_push_rejected() {
    let cd = corpus::entry("T(2,17)").unwrap().colored17().unwrap();
    let d = &cd.diagram;
    // Two semiarcs far apart in a 17-crossing diagram share no face.
    let a = SemiArcId(0);
    let far = d
        .semiarc_ids()
        .find(|&s| {
            let fa = [
                d.face_of(d.side_dart(Side::new(a, false)).unwrap()),
                d.face_of(d.side_dart(Side::new(a, true)).unwrap()),
            ];
            let ds = [d.side_dart(Side::new(s, false)).unwrap(), d.side_dart(Side::new(s, true)).unwrap()];
            fa.iter().all(|f| ds.iter().all(|p| !f.darts.contains(p)))
        })
        .unwrap();
    for (r1, r2) in [(false, false), (false, true), (true, false), (true, true)] {
        let m = Move::R2PushOver { strand: Side::new(a, r1), target: Side::new(far, r2) };
        assert!(!cd.applicable(&m).unwrap());
        assert!(matches!(cd.apply(&m), Err(MoveError::NotApplicable(_))));
    }
}

#[test]
fn push_then_remove_restores() {
    let cd = corpus::entry("7_5").unwrap().colored17().unwrap();
    let mut n = 0;
    for strand in all_sides(&cd) {
        for target in all_sides(&cd) {
            let m = Move::R2PushUnder { strand, target };
            if !cd.applicable(&m).unwrap() {
                continue;
            }
            let out = cd.apply(&m).unwrap();
            check(&out);
            let inv = inverse(&cd, &m, &out).unwrap();
            let (back, trace) = apply_sequence(&cd, &[m, inv]).unwrap();
            assert_eq!(back.checksum(), cd.checksum());
            assert_eq!(trace.len(), 2);
            n += 1;
        }
    }
    assert!(n > 10);
}

#[test]
fn r3_on_pushed_trefoil() {
    // Pushes create triangles; every applicable R3 must be sound and invertible.
    let cd = trefoil3();
    let mut r3s = 0;
    for strand in all_sides(&cd) {
        for target in all_sides(&cd) {
            let m = Move::R2PushOver { strand, target };
            if !cd.applicable(&m).unwrap() {
                continue;
            }
            let pushed = cd.apply(&m).unwrap();
            for side in all_sides(&pushed) {
                let r = Move::R3Slide { side };
                if !pushed.applicable(&r).unwrap() {
                    continue;
                }
                let out = pushed.apply(&r).unwrap();
                check(&out);
                assert_eq!(count_colorings(&out.diagram, 3).unwrap(), 9);
                let inv = inverse(&pushed, &r, &out).expect("r3 inverse");
                assert!(matches!(inv, Move::R3Slide { .. }));
                r3s += 1;
            }
        }
    }
    assert!(r3s > 0);
}

#[test]
fn r2_remove_inverse_is_push() {
    let cd = trefoil3();
    let m = all_sides(&cd)
        .into_iter()
        .flat_map(|a| all_sides(&cd).into_iter().map(move |b| Move::R2PushUnder { strand: a, target: b }))
        .find(|m| cd.applicable(m).unwrap())
        .unwrap();
    let pushed = cd.apply(&m).unwrap();
    let rm = inverse(&cd, &m, &pushed).unwrap();
    let back = pushed.apply(&rm).unwrap();
    let again = inverse(&pushed, &rm, &back).expect("push restores");
    assert_eq!(back.apply(&again).unwrap().checksum(), pushed.checksum());
}

#[test]
fn locality() {
    let cd = corpus::entry("T(2,17)").unwrap().colored17().unwrap();
    let d = &cd.diagram;
    let side = Side::new(SemiArcId(3), false);
    let out = cd.apply(&Move::R1Add { side, over_first: false }).unwrap();
    let [a, b] = d.semiarc_ends(SemiArcId(3)).unwrap();
    for x in d.crossing_ids() {
        if x != a.crossing && x != b.crossing {
            assert_eq!(d.crossing(x), out.diagram.crossing(x));
        }
    }
}

#[test]
fn empty_sequence_is_identity() {
    let cd = trefoil3();
    let (out, trace) = apply_sequence(&cd, &[]).unwrap();
    assert_eq!(out, cd);
    assert!(trace.is_empty());
}

#[test]
fn sequence_reports_failing_index() {
    let cd = trefoil3();
    let bad = Move::R1Remove { crossing: CrossingId(0) };
    let ok = Move::R1Add { side: Side::new(SemiArcId(0), false), over_first: true };
    match apply_sequence(&cd, &[ok, bad]) {
        Err(SequenceError::Move { index, .. }) => assert_eq!(index, 1),
        other => panic!("{other:?}"),
    }
}

fn figure_eight5() -> ColoredDiagram {
    let d = corpus::entry("figure-eight").unwrap().diagram();
    let col = corpus::default_coloring(&d, 5).unwrap();
    ColoredDiagram::from_fox(d, &col).unwrap()
}

proptest::proptest! {
    #![proptest_config(proptest::test_runner::Config::with_cases(48))]

    #[test]
    fn random_walks_stay_sound(picks in proptest::collection::vec(proptest::num::usize::ANY, 1..8), eight in proptest::bool::ANY) {
        let start = if eight { figure_eight5() } else { trefoil3() };
        let count = count_colorings(&start.diagram, start.p).unwrap();
        let mut cd = start.clone();
        let mut moves = Vec::new();
        for pick in picks {
            let options = cd.applicable_moves();
            let m = options[pick % options.len()];
            cd = cd.apply(&m).unwrap();
            moves.push(m);
            check(&cd);
            proptest::prop_assert_eq!(count_colorings(&cd.diagram, cd.p).unwrap(), count);
        }
        let (replayed, trace) = apply_sequence(&start, &moves).unwrap();
        proptest::prop_assert_eq!(trace.len(), moves.len());
        proptest::prop_assert_eq!(replayed.checksum(), cd.checksum());
    }
}
