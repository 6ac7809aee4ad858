use std::collections::HashMap;

use tristable::exact::max_3dm;
use tristable::reductions::{
    assignment_to_matching, decode_matching_to_assignment, rings_per_variable, sat_to_3dm3, small_formulas,
    symmetrize, uncovered, vertex_bound, SatBFormula, VertexRole,
};

fn check_structure(f: &SatBFormula) {
    let (dm, layout) = sat_to_3dm3(f).unwrap();
    assert_eq!(layout.edges.len(), dm.edges().len());
    for (e, le) in dm.edges().iter().zip(&layout.edges) {
        for part in 0..3 {
            let v = &layout.vertices[le.vertices[part]];
            assert_eq!(v.part as usize, part);
            assert_eq!(v.index, e[part]);
        }
    }
    let per_part: Vec<usize> = (0..3u8).map(|p| layout.vertices.iter().filter(|v| v.part == p).count()).collect();
    assert_eq!(per_part, vec![dm.m(); 3]);
    for c in 0..3u8 {
        assert_eq!(layout.vertices.iter().filter(|v| v.copy == c).count(), layout.vertices_per_copy());
    }
    assert!(dm.degree_bounded3());
    let mut degree = vec![0usize; layout.vertices.len()];
    for e in &layout.edges {
        e.vertices.iter().for_each(|&v| degree[v] += 1);
    }
    for (v, d) in layout.vertices.iter().zip(&degree) {
        match v.role {
            VertexRole::Tip { .. } | VertexRole::RingA { .. } | VertexRole::RingB { .. } | VertexRole::Tree { .. } => {
                assert_eq!(*d, 2, "{:?}", v.role)
            }
            VertexRole::Root { .. } => assert!((2..=3).contains(d)),
            VertexRole::Clause { .. } => assert!((1..=3).contains(d)),
        }
    }
    assert!(layout.vertices.len() <= vertex_bound(f));
}

#[test]
fn ring_counts_follow_the_bound() {
    let f = SatBFormula::new(1, vec![vec![1]], 1).unwrap();
    assert_eq!(sat_to_3dm3(&f).unwrap().1.rings, 2);
    assert_eq!(rings_per_variable(3), 4);
}

#[test]
fn every_small_formula_is_well_formed() {
    let formulas = small_formulas(3, 3);
    assert!(formulas.len() >= 50);
    formulas.iter().for_each(check_structure);
}

#[test]
fn two_literal_clause() {
    let f = SatBFormula::new(2, vec![vec![1, 2]], 1).unwrap();
    let (dm, layout) = sat_to_3dm3(&f).unwrap();
    let m = assignment_to_matching(&f, &layout, &[true, false]).unwrap();
    assert!(dm.is_matching(&m));
    assert_eq!(uncovered(&dm, m.len()), 0);
    let m = assignment_to_matching(&f, &layout, &[false, false]).unwrap();
    assert_eq!(uncovered(&dm, m.len()), 6);
}

#[test]
fn no_clauses() {
    let f = SatBFormula::new(2, vec![], 1).unwrap();
    let (dm, layout) = sat_to_3dm3(&f).unwrap();
    assert_eq!(dm.m(), 0);
    assert!(assignment_to_matching(&f, &layout, &[true, true]).unwrap().is_empty());
}

#[test]
fn encode_decode_round_trip() {
    for f in small_formulas(3, 3) {
        let (dm, layout) = sat_to_3dm3(&f).unwrap();
        for mask in 0u32..1 << f.n_vars() {
            let a: Vec<bool> = (0..f.n_vars()).map(|v| mask >> v & 1 == 1).collect();
            let m = assignment_to_matching(&f, &layout, &a).unwrap();
            assert!(dm.is_matching(&m));
            assert_eq!(uncovered(&dm, m.len()), 6 * (f.clauses().len() - f.satisfied(&a)));
            assert_eq!(decode_matching_to_assignment(&f, &layout, &m).unwrap(), a);
        }
    }
}

#[test]
fn symmetrized_optima() {
    for f in small_formulas(3, 3) {
        let (dm, layout) = sat_to_3dm3(&f).unwrap();
        let best = max_3dm(&dm).unwrap();
        let sym = symmetrize(&layout, &best.edges);
        assert!(dm.is_matching(&sym));
        assert!(sym.len() >= best.size());
        let mut per_copy = HashMap::new();
        for &e in &sym {
            if let Some(c) = layout.edges[e].copy {
                *per_copy.entry(c).or_insert(0) += 1;
            }
        }
        assert!(per_copy.values().all(|&k| k == per_copy[&0]));
        let (opt, _) = f.brute_force_opt();
        if opt == f.clauses().len() {
            assert_eq!(sym.len(), dm.m());
            let a = decode_matching_to_assignment(&f, &layout, &sym).unwrap();
            assert_eq!(f.satisfied(&a), opt);
        }
    }
}
