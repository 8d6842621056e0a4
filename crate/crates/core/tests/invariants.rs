mod common;

use num_rational::Ratio;
use sdiam_core::connectivity::{blocks_and_cut_vertices, cut_vertices, profile, two_cuts, vertex_connectivity};
use sdiam_core::steiner::{average_steiner_distance, eccentricity_profile, steiner_center, steiner_eccentricity, steiner_median};
use sdiam_core::Graph;

#[test]
fn connectivity_matches_brute_force() {
    for n in 1..=7 {
        for (line, g) in common::connected(n) {
            assert_eq!(vertex_connectivity(&g), common::brute_kappa(&g), "{line}");
            assert_eq!(cut_vertices(&g), common::brute_cut_vertices(&g), "{line}");
        }
    }
}

#[test]
fn blocks_partition_edges_into_a_tree() {
    for n in 2..=7 {
        for (line, g) in common::connected(n) {
            let (cuts, blocks) = blocks_and_cut_vertices(&g);
            let mut covered = 0;
            for b in &blocks {
                let (h, _) = g.induced_subgraph(b.iter().copied().collect()).unwrap();
                assert!(h.is_connected(), "{line}");
                if b.len() >= 3 {
                    assert!(cut_vertices(&h).is_empty(), "{line} block {b:?}");
                }
                covered += h.size();
            }
            assert_eq!(covered, g.size(), "{line}");
            // Block-cut incidence graph is a tree.
            assert_eq!(blocks.iter().map(|b| b.len() - 1).sum::<usize>(), n - 1, "{line}");
            for v in 0..n {
                let inside = blocks.iter().filter(|b| b.contains(&v)).count();
                assert_eq!(inside >= 2, cuts.contains(&v), "{line} vertex {v}");
            }
        }
    }
}

#[test]
fn two_cuts_are_separating_pairs() {
    for (line, g) in common::connected(6) {
        let pairs = two_cuts(&g).unwrap();
        let kappa = profile(&g).kappa;
        assert_eq!(pairs.is_empty(), kappa >= 3, "{line}");
    }
}

#[test]
fn eccentricity_center_median_average() {
    for n in 2..=6 {
        for (line, g) in common::connected(n) {
            let table = common::all_distances(&g);
            for k in 2..=n {
                let sets: Vec<usize> = (0..table.len()).filter(|m| m.count_ones() as usize == k).collect();
                let ecc: Vec<u32> = (0..n)
                    .map(|v| sets.iter().filter(|&&m| m >> v & 1 == 1).map(|&m| table[m]).max().unwrap())
                    .collect();
                let tot: Vec<u64> = (0..n)
                    .map(|v| sets.iter().filter(|&&m| m >> v & 1 == 1).map(|&m| table[m] as u64).sum())
                    .collect();
                let p = eccentricity_profile(&g, k).unwrap();
                assert_eq!(p.per_vertex.iter().map(|&e| e as u32).collect::<Vec<_>>(), ecc, "{line} k={k}");
                assert_eq!(p.totals, tot, "{line} k={k}");
                let r = *ecc.iter().min().unwrap();
                let center: Vec<usize> = (0..n).filter(|&v| ecc[v] == r).collect();
                assert_eq!(steiner_center(&g, k).unwrap(), center);
                let best = *tot.iter().min().unwrap();
                let median: Vec<usize> = (0..n).filter(|&v| tot[v] == best).collect();
                assert_eq!(steiner_median(&g, k).unwrap(), median);
                let sum: u64 = sets.iter().map(|&m| table[m] as u64).sum();
                assert_eq!(average_steiner_distance(&g, k).unwrap(), Ratio::new(sum, sets.len() as u64));
                assert_eq!(steiner_eccentricity(&g, n - 1, k).unwrap() as u32, ecc[n - 1]);
            }
        }
    }
}

#[test]
fn small_named_values() {
    let p5 = Graph::path(5).unwrap();
    assert_eq!(steiner_center(&p5, 3).unwrap(), vec![0, 1, 2, 3, 4]);
    assert_eq!(steiner_center(&p5, 2).unwrap(), vec![2]);
    let k4 = Graph::complete(4).unwrap();
    assert_eq!(average_steiner_distance(&k4, 3).unwrap(), Ratio::new(2, 1));
    let c6 = Graph::cycle(6).unwrap();
    assert_eq!(eccentricity_profile(&c6, 3).unwrap().diameter, 4);
}

#[test]
fn invariants_reject_bad_k_and_disconnected() {
    let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(eccentricity_profile(&g, 2).is_err());
    let p = Graph::path(4).unwrap();
    assert!(eccentricity_profile(&p, 1).is_err());
    assert!(eccentricity_profile(&p, 5).is_err());
}
