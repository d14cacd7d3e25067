mod common;

use std::collections::BTreeSet;

use bfp::exactpoly::{f_poly, g_poly, rational_to_f64};
use bfp::extremal::{
    brute_force_extremal, candidates, canonical_form, enumerate_k, is_plus_minus, one_vertex_added,
    one_vertex_added_members, verify_counterexample, SearchConfig,
};
use bfp::graphs::{build_ferrers, build_family, pad_columns, BipartiteGraph, DegreeSequence, Family};
use bfp::spectral::{h_matrix, spectral_radius_graph, DEFAULT_TOL};
use num_bigint::BigInt;
use num_rational::BigRational;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

#[test]
fn ferrers_figure() {
    let d: DegreeSequence = "5,3,1,1".parse().unwrap();
    let f = build_ferrers(&d, 5).unwrap();
    assert_eq!(f.graph().to_text(), "4 5\n11111\n11100\n10000\n10000\n");
    assert_eq!(d.exponential(), "(5,3,1^[2])");
    assert_eq!(
        h_matrix(&d).to_rows(),
        vec![vec![5, 3, 1, 1], vec![3, 3, 1, 1], vec![1, 1, 1, 1], vec![1, 1, 1, 1]]
    );
}

#[test]
fn small_family_figures() {
    let up4 = build_family(Family::UpperE { p: 2, q: 3, e: 4 }).unwrap();
    assert_eq!(up4.degrees().entries(), &[3, 1]);
    let up5 = build_family(Family::UpperE { p: 2, q: 3, e: 5 }).unwrap();
    let low5 = build_family(Family::LowerE { p: 2, q: 3, e: 5 }).unwrap();
    assert_eq!(canonical_form(up5.graph()), canonical_form(low5.graph()));
    let pm23 = build_family(Family::PlusMinus { p: 2, q: 3 }).unwrap();
    let up6 = build_family(Family::UpperE { p: 2, q: 4, e: 6 }).unwrap();
    assert_eq!(canonical_form(pm23.graph()), canonical_form(up6.graph()));
    assert!(is_plus_minus(up6.graph()));
    assert!(!one_vertex_added(pm23.graph()).is_empty());
    let pm33 = build_family(Family::PlusMinus { p: 3, q: 3 }).unwrap();
    assert_eq!(pm33.degrees().entries(), &[4, 3, 2]);
}

#[test]
fn k22_paths() {
    let oracle: Vec<BipartiteGraph> = common::subsets(4, 3)
        .iter()
        .map(|s| common::subset_graph(2, 2, s))
        .filter(common::member)
        .collect();
    assert_eq!(oracle.len(), 4);
    for g in &oracle {
        let mut degs = g.row_degrees();
        degs.extend(g.col_degrees());
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert!(g.is_connected());
    }
    let got: Vec<_> = enumerate_k(2, 2, 3, &cfg()).unwrap().collect();
    assert_eq!(got, oracle);
    let dedup = SearchConfig { dedup: true, ..cfg() };
    assert_eq!(enumerate_k(2, 2, 3, &dedup).unwrap().count(), 1);
}

#[test]
fn stream_matches_definition() {
    for (p, q, e) in [(3usize, 6usize, 15usize), (3, 4, 7), (2, 5, 4), (4, 3, 6)] {
        let oracle: Vec<BipartiteGraph> = common::subsets(p * q, e)
            .iter()
            .map(|s| common::subset_graph(p, q, s))
            .filter(common::member)
            .collect();
        let got: Vec<_> = enumerate_k(p as u64, q as u64, e as u64, &cfg()).unwrap().collect();
        assert_eq!(got, oracle, "({p},{q},{e})");
    }
    assert_eq!(common::subsets(18, 15).len(), 816);
}

#[test]
fn search_matches_dense_sweep() {
    for (p, q, e) in [(3usize, 6usize, 15usize), (2, 3, 5), (3, 4, 8)] {
        let mut sweep: Vec<(BipartiteGraph, f64)> = common::subsets(p * q, e)
            .iter()
            .map(|s| common::subset_graph(p, q, s))
            .filter(common::member)
            .map(|g| {
                let r = common::dense_rho(&g);
                (g, r)
            })
            .collect();
        let max = sweep.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        sweep.retain(|x| x.1 >= max - 1e-9);
        let found = brute_force_extremal(p as u64, q as u64, e as u64, &cfg()).unwrap();
        assert!((found.max_rho.unwrap() - max).abs() < 1e-9);
        let got: Vec<&BipartiteGraph> = found.maximizers.iter().map(|x| &x.0).collect();
        let want: Vec<&BipartiteGraph> = sweep.iter().map(|x| &x.0).collect();
        assert_eq!(got, want, "({p},{q},{e})");
    }
}

#[test]
fn k23_five_edges_maximizer() {
    let found = brute_force_extremal(2, 3, 5, &cfg()).unwrap();
    let low5 = build_family(Family::LowerE { p: 2, q: 3, e: 5 }).unwrap();
    let target = canonical_form(low5.graph());
    assert!(found.maximizers.iter().any(|(g, _)| canonical_form(g) == target));
    let dense = common::dense_rho(low5.graph());
    assert!((found.max_rho.unwrap() - dense).abs() < 1e-10);
}

#[test]
fn counterexample_three_six_one() {
    let r = verify_counterexample(3, 6, 1, &cfg()).unwrap();
    let (lo, hi) = common::bisect_largest(&[-4, 17, -15, 1], 13, 14, 50);
    let g_root = common::to_f64(&lo);
    assert!(r.rho_pm_squared.lo <= hi && lo <= r.rho_pm_squared.hi);
    assert!((r.rho_pm * r.rho_pm - g_root).abs() < 1e-7);
    let f_root = (15.0 + 153f64.sqrt()) / 2.0;
    let c = &r.candidates[0];
    assert!((rational_to_f64(&c.rho_squared.midpoint()) - f_root).abs() < 1e-9);
    assert!(f_root < g_root);
    let pm = pad_columns(build_family(Family::PlusMinus { p: 3, q: 5 }).unwrap().graph(), 6);
    assert!((common::dense_rho(&pm) - r.rho_pm).abs() < 1e-7);
    let up = build_family(Family::UpperE { p: 3, q: 6, e: 15 }).unwrap();
    assert!((common::dense_rho(up.graph()) - c.rho).abs() < 1e-7);
    assert!((r.rho_pm - 3.7132).abs() < 5e-5);
    assert!((c.rho - 3.6993).abs() < 5e-5);
}

#[test]
fn counterexample_three_nine_two() {
    let r = verify_counterexample(3, 9, 2, &cfg()).unwrap();
    assert!(r.verdict);
    let pm = pad_columns(build_family(Family::PlusMinus { p: 3, q: 7 }).unwrap().graph(), 9);
    let rho_pm = common::dense_rho(&pm);
    for c in &r.candidates {
        let g = c.degrees.clone();
        let graph = build_ferrers(&g, g.max_degree() as usize).unwrap().into_graph();
        let rho = common::dense_rho(&graph);
        assert!(rho < rho_pm);
        assert!((rho - c.rho).abs() < 1e-7);
    }
}

#[test]
fn candidates_match_definition_matching() {
    for (p, q, k) in [(3u64, 6u64, 1u64), (3, 9, 2)] {
        let e = p * (q - k);
        let set = candidates(p, q, k).unwrap();
        let expected: BTreeSet<BipartiteGraph> = set
            .members
            .iter()
            .map(|c| canonical_form(&c.graph(q as usize).unwrap().restricted()))
            .collect();
        let oracle: BTreeSet<BipartiteGraph> = common::subsets((p * q) as usize, e as usize)
            .iter()
            .map(|s| common::subset_graph(p as usize, q as usize, s))
            .filter(|g| common::member(g) && common::definitionally_one_vertex_added(g))
            .map(|g| canonical_form(&g.restricted()))
            .collect();
        assert_eq!(oracle, expected, "({p},{q},{k})");
        let found: BTreeSet<BipartiteGraph> = one_vertex_added_members(p, q, e, &cfg()).unwrap().into_iter().collect();
        assert_eq!(found, expected);
    }
    let ds: Vec<Vec<u32>> = candidates(3, 9, 2).unwrap().members.iter().map(|c| c.degrees.entries().to_vec()).collect();
    assert_eq!(ds, vec![vec![9, 9, 3], vec![8, 8, 5]]);
}

#[test]
fn polynomials_by_hand() {
    assert_eq!(g_poly(3, 6, 1).unwrap().to_string(), "x^3 - 15x^2 + 17x - 4");
    assert_eq!(f_poly(3, 6, 1, 0).unwrap().to_string(), "x^3 - 15x^2 + 18x");
    // the quadratic factor's discriminant is 153
    let f = f_poly(3, 6, 1, 0).unwrap();
    let x = BigRational::from_integer(BigInt::from(14));
    assert!(f.eval(&x) > BigRational::from_integer(BigInt::from(0)));
    let x = BigRational::from_integer(BigInt::from(13));
    assert!(f.eval(&x) < BigRational::from_integer(BigInt::from(0)));
}

#[test]
fn plus_minus_by_edits() {
    // delete x1y1 from K_{3,5}, add a new column joined to x2
    let mut edges: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..5).map(move |j| (i, j))).filter(|&e| e != (0, 0)).collect();
    edges.push((1, 5));
    let edited = BipartiteGraph::from_edges(3, 6, edges);
    let pm = build_family(Family::PlusMinus { p: 3, q: 5 }).unwrap();
    assert_eq!(canonical_form(&edited), canonical_form(pm.graph()));
    assert_eq!(edited.edge_count(), 15);
    let r1 = spectral_radius_graph(&edited, DEFAULT_TOL).unwrap().rho;
    assert!((r1 - common::dense_rho(pm.graph())).abs() < 1e-9);
}
