use std::collections::{BTreeMap, BTreeSet, VecDeque};

use proptest::prelude::*;

use positroid::bridges::{assemble_plabic, count_decompositions, enumerate_decompositions, BridgeDecomposition};
use positroid::exact::q;
use positroid::hull_oracle::{face_lattice, facet_enumeration_small, is_edge_lp, supporting_functional, verify_argmax_certificate, HullLimits, RationalPointSet};
use positroid::permcore::{bruhat_leq, BoundedAffinePermutation, DecoratedPermutation, GrassmannNecklace, Permutation, SubsetJ};
use positroid::plabic::{GraphJson, MoveKind, PlabicGraph, VertexColor};
use positroid::polytope::s_j_vertices;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn decorated_strategy(max_n: usize) -> impl Strategy<Value = DecoratedPermutation> {
    (1..=max_n).prop_flat_map(|n| (perm_strategy(n), proptest::collection::vec(any::<bool>(), n))).prop_map(|(p, flags)| {
        let ccw: Vec<usize> = p.fixed_points().into_iter().filter(|&i| flags[i - 1]).collect();
        DecoratedPermutation::new(p, ccw).unwrap()
    })
}

fn graphs_of(d: &DecoratedPermutation, limit: Option<usize>) -> Vec<PlabicGraph> {
    enumerate_decompositions(d, limit).map(|dec| assemble_plabic(&dec).unwrap()).collect()
}

#[test]
fn affinization_round_trips() {
    for n in 1..=6 {
        for d in DecoratedPermutation::all(n) {
            let a = BoundedAffinePermutation::affinize(&d);
            assert_eq!(a.deaffinize(), d);
            for i in 1..=n {
                assert_eq!((a.at(i) - 1) % n + 1, d.perm().at(i));
            }
        }
    }
}

#[test]
fn necklaces_round_trip() {
    for n in 1..=6 {
        for necklace in GrassmannNecklace::all(n) {
            let d = necklace.to_decorated().unwrap();
            assert_eq!(GrassmannNecklace::from_decorated(&d), necklace);
        }
    }
}

#[test]
fn schubert_permutations_are_grassmannian() {
    for n in 1..=6 {
        for j in SubsetJ::all(n) {
            let inv = j.pi().perm().inverse();
            let expected: Vec<usize> = j.complement().iter().chain(j.members()).copied().collect();
            assert_eq!(inv.one_line(), expected.as_slice());
            assert!(inv.is_grassmannian());
        }
    }
}

#[test]
fn bruhat_order_is_cover_reachability() {
    for n in [4, 5] {
        let all = Permutation::all(n);
        let index: BTreeMap<&Permutation, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (s, u) in all.iter().enumerate() {
            // covers: u -> u·(a b) with length one more
            let mut seen = vec![false; all.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([u.clone()]);
            while let Some(x) = queue.pop_front() {
                for a in 1..=n {
                    for b in a + 1..=n {
                        let y = x.swap_positions(a, b);
                        if y.length() == x.length() + 1 && !seen[index[&y]] {
                            seen[index[&y]] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
            for (t, v) in all.iter().enumerate() {
                assert_eq!(bruhat_leq(u, v).unwrap(), seen[t], "{u} <= {v}");
            }
        }
    }
}

#[test]
fn reduced_words_of_the_longest_element() {
    let w0 = Permutation::longest(4);
    let mut words = 0;
    for code in 0..3usize.pow(6) {
        let word: Vec<usize> = (0..6).map(|t| code / 3usize.pow(t) % 3 + 1).collect();
        let mut x = Permutation::identity(4);
        let mut lengths = Vec::new();
        for &s in &word {
            x = x.swap_positions(s, s + 1);
            lengths.push(x.length());
        }
        if x == w0 {
            words += 1;
            assert_eq!(lengths, (1..=6).collect::<Vec<_>>());
        }
    }
    assert_eq!(words, 16);
}

#[test]
fn trips_use_every_dart_once() {
    for n in 1..=4 {
        for d in DecoratedPermutation::all(n) {
            for g in graphs_of(&d, Some(5)) {
                let mut used: Vec<usize> = g.trips().unwrap().into_iter().flat_map(|t| t.darts).collect();
                used.sort_unstable();
                assert_eq!(used, (0..g.dart_count()).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn bridge_graphs_are_reduced_with_the_right_trips() {
    for n in 1..=5 {
        for d in DecoratedPermutation::all(n) {
            let limit = if n == 5 { Some(50) } else { None };
            for g in graphs_of(&d, limit) {
                assert_eq!(g.trip_permutation().unwrap(), d);
                assert!(g.is_reduced().unwrap());
            }
        }
    }
}

#[test]
fn decompositions_share_a_length_and_freeze_monotonically() {
    for n in 1..=5 {
        for d in DecoratedPermutation::all(n) {
            let limit = if n == 5 { Some(500) } else { None };
            let decs: Vec<BridgeDecomposition> = enumerate_decompositions(&d, limit).collect();
            if limit.is_none() {
                assert_eq!(decs.len() as u128, count_decompositions(&d));
            }
            let lens: BTreeSet<usize> = decs.iter().map(BridgeDecomposition::len).collect();
            assert_eq!(lens.len(), 1, "{d}");
            for dec in &decs {
                assert_eq!(BridgeDecomposition::replay(&d, &dec.steps).unwrap(), *dec);
                for w in dec.trace.windows(2) {
                    assert!(w[0].frozen().is_subset(w[1].frozen()));
                }
            }
        }
    }
}

#[test]
fn equivalence_moves_preserve_trips_and_reducedness() {
    for n in 1..=5 {
        for j in SubsetJ::all(n) {
            let source = s_j_vertices(&j).apex_inverse_decorated();
            for g in graphs_of(&source, None) {
                let trip = g.trip_permutation().unwrap();
                for kind in MoveKind::EQUIVALENCE {
                    for site in g.find_move_sites(kind) {
                        let h = g.apply_move(&site).unwrap();
                        assert_eq!(h.trip_permutation().unwrap(), trip, "{kind:?} on {j} n={n}");
                        assert!(h.is_reduced().unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn hull_edges_match_the_face_lattice() {
    for n in 1..=4 {
        for j in SubsetJ::all(n) {
            let set = s_j_vertices(&j).point_set();
            let lattice = face_lattice(&set, &HullLimits::default()).unwrap();
            let from_lattice: BTreeSet<Vec<usize>> = lattice.faces_of_dim(1).iter().cloned().collect();
            let m = set.len();
            let from_lp: BTreeSet<Vec<usize>> =
                (0..m).flat_map(|a| (a + 1..m).map(move |b| vec![a, b])).filter(|p| is_edge_lp(&set, p[0], p[1]).0).collect();
            assert_eq!(from_lattice, from_lp, "{j} n={n}");
        }
    }
}

fn relabeled(g: &PlabicGraph, vertex_order: &[usize], dart_order: &[usize]) -> PlabicGraph {
    let mut j = GraphJson::from(g);
    let n = g.n();
    // boundary vertices keep their ids
    let vmap = |v: usize| if v < n { v } else { n + vertex_order[v - n] };
    let dmap = |d: usize| dart_order[d];
    for v in &mut j.vertices {
        v.id = vmap(v.id);
    }
    for d in &mut j.darts {
        d.id = dmap(d.id);
        d.vertex = vmap(d.vertex);
    }
    for e in &mut j.edges {
        *e = [dmap(e[0]), dmap(e[1])];
    }
    j.rotation = j.rotation.iter().map(|(&v, rot)| (vmap(v), rot.iter().map(|&d| dmap(d)).collect())).collect();
    PlabicGraph::try_from(j).unwrap()
}

fn small_points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2..=3usize).prop_flat_map(|dim| {
        proptest::collection::btree_set(proptest::collection::vec(-3i64..=3, dim), 1..=9).prop_map(|s| s.into_iter().collect())
    })
}

fn rational(points: &[Vec<i64>]) -> RationalPointSet {
    RationalPointSet::new(points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect(), vec![]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_ignores_internal_numbering(
        d in decorated_strategy(5),
        seed in any::<u64>(),
    ) {
        let g = graphs_of(&d, Some(1)).pop().unwrap();
        let internal = g.vertex_count() - g.n();
        let mut vertex_order: Vec<usize> = (0..internal).collect();
        let mut dart_order: Vec<usize> = (0..g.dart_count()).collect();
        // a cheap deterministic shuffle from the seed
        let mut s = seed | 1;
        for v in [&mut vertex_order, &mut dart_order] {
            for i in (1..v.len()).rev() {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                v.swap(i, (s % (i as u64 + 1)) as usize);
            }
        }
        let h = relabeled(&g, &vertex_order, &dart_order);
        prop_assert_eq!(h.canonical_form(), g.canonical_form());
        prop_assert_eq!(h.trip_permutation().unwrap(), d);
    }

    #[test]
    fn six_strand_bridge_graphs_are_reduced(d in decorated_strategy(6)) {
        let g = graphs_of(&d, Some(1)).pop().unwrap();
        prop_assert_eq!(g.trip_permutation().unwrap(), d);
        prop_assert!(g.is_reduced().unwrap());
    }

    #[test]
    fn lollipop_colors_follow_the_decoration(d in decorated_strategy(6)) {
        let g = graphs_of(&d, Some(1)).pop().unwrap();
        for i in d.perm().fixed_points() {
            let v = g.neighbor(g.boundary_dart(i));
            prop_assert!(g.is_lollipop(v));
            let want = if d.ccw_fixed().contains(&i) { VertexColor::White } else { VertexColor::Black };
            prop_assert_eq!(g.color(v), want);
        }
    }

    #[test]
    fn certificates_reverify(points in small_points(), mask in any::<u16>()) {
        let set = rational(&points);
        let tight: Vec<usize> = (0..points.len()).filter(|&i| mask >> i & 1 == 1).collect();
        if let Some(cert) = supporting_functional(&set, &tight) {
            prop_assert_eq!(&cert.tight_set, &tight);
            prop_assert!(verify_argmax_certificate(&set, &cert.lambda, &cert.tight_set));
        }
    }

    #[test]
    fn facets_ignore_point_order_and_coordinate_order(points in small_points(), rot in 0usize..9, flip in any::<bool>()) {
        let m = points.len();
        let dim = points[0].len();
        let order: Vec<usize> = (0..m).map(|i| (i + rot) % m).collect();
        let coords: Vec<usize> = if flip { (0..dim).rev().collect() } else { (0..dim).collect() };
        let moved: Vec<Vec<i64>> = order.iter().map(|&i| coords.iter().map(|&c| points[i][c]).collect()).collect();
        let limits = HullLimits::default();
        let a = facet_enumeration_small(&rational(&points), &limits).unwrap();
        let b = facet_enumeration_small(&rational(&moved), &limits).unwrap();
        let back = |f: &[usize]| -> BTreeSet<usize> { f.iter().map(|&i| order[i]).collect() };
        let fa: BTreeSet<BTreeSet<usize>> = a.facets.iter().map(|f| f.points.iter().copied().collect()).collect();
        let fb: BTreeSet<BTreeSet<usize>> = b.facets.iter().map(|f| back(&f.points)).collect();
        prop_assert_eq!(fa, fb);
    }

    #[test]
    fn bruhat_interval_contains_its_ends(u in perm_strategy(5), v in perm_strategy(5)) {
        let e = Permutation::identity(5);
        prop_assert!(bruhat_leq(&e, &u).unwrap());
        prop_assert!(bruhat_leq(&u, &Permutation::longest(5)).unwrap());
        if bruhat_leq(&u, &v).unwrap() && bruhat_leq(&v, &u).unwrap() {
            prop_assert_eq!(u, v);
        }
    }
}
