//! Fixed values on the n = 2 gadget and its lift, cross-checked against an
//! independent brute-force script.

use tristable::approx::{amsm, asa};
use tristable::exact::{msm_opt, mss_opt, psa_opt, Mode};
use tristable::generators::{gen_gadget2, lift_gsm_to_psa};
use tristable::instance::{Gender, GsmInstance};
use tristable::solution::{marriage_as_matching, Family, Marriage};
use tristable::stability::{stability_report_gsm, stability_report_psa};

/// The gadget with a₂ moved to b₂d₂ first, which makes {a₁b₁d₁, a₂b₂d₂} stable.
fn edited_gadget() -> GsmInstance {
    let mut lists = gen_gadget2().preference_lists();
    let row = &mut lists[Gender::Woman.index()][1];
    row.retain(|&p| p != 3);
    row.insert(0, 3);
    GsmInstance::from_preference_lists(2, lists).unwrap()
}

#[test]
fn gadget_diagonal_marriage_report() {
    let g = gen_gadget2();
    let m = Marriage::from_permutations(&[0, 1], &[0, 1]).unwrap();
    let r = stability_report_gsm(&g, m.as_submarriage(), true);
    assert_eq!((r.stab, r.ins), (7, 1));
    assert_eq!(r.unstable.unwrap(), vec![[1, 1, 0]]);
}

#[test]
fn gadget_marriage_instabilities() {
    let g = gen_gadget2();
    let expected = [((0, 1), (0, 1), 1), ((0, 1), (1, 0), 1), ((1, 0), (0, 1), 4), ((1, 0), (1, 0), 1)];
    for ((s0, s1), (t0, t1), ins) in expected {
        let m = Marriage::from_permutations(&[s0, s1], &[t0, t1]).unwrap();
        assert_eq!(stability_report_gsm(&g, m.as_submarriage(), false).ins, ins);
    }
}

#[test]
fn gadget_greedy_and_exact() {
    let g = gen_gadget2();
    let out = amsm(&g);
    assert_eq!(out.marriage.families(), &[Family::new(0, 0, 0), Family::new(1, 1, 1)]);
    assert_eq!((out.report.stab, out.report.ins), (7, 1));
    let best = msm_opt(&g, 6).unwrap();
    assert_eq!(best.stab, 7);
    assert_eq!(best.enumerated, 4);
    assert_eq!(mss_opt(&g, 4).unwrap().size, 1);
}

#[test]
fn lifted_gadget() {
    let p = lift_gsm_to_psa(&gen_gadget2());
    let out = asa(&p);
    assert_eq!(out.matching.triples(), &[[0, 2, 4], [1, 3, 5]]);
    assert_eq!((out.report.stab, out.report.ins), (19, 1));
    let best = psa_opt(&p, Mode::Msm, 9).unwrap();
    assert_eq!((best.value, best.enumerated), (19, 10));
}

#[test]
fn edited_gadget_is_stable() {
    let g = edited_gadget();
    let m = Marriage::from_permutations(&[0, 1], &[0, 1]).unwrap();
    assert_eq!(stability_report_gsm(&g, m.as_submarriage(), false).ins, 0);
    assert_eq!(msm_opt(&g, 6).unwrap().stab, 8);
    assert_eq!(mss_opt(&g, 4).unwrap().size, 2);
    let p = lift_gsm_to_psa(&g);
    let r = stability_report_psa(&p, marriage_as_matching(&m).as_submatching(), false);
    assert_eq!((r.stab, r.ins), (20, 0));
    assert_eq!(psa_opt(&p, Mode::Msm, 9).unwrap().value, 20);
}
