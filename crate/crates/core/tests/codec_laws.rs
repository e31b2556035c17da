use proptest::prelude::*;
use rptree::codec::leader_choice_count;
use rptree::experiments::tie_break_is_unique;
use rptree::format::{parse_tree, write_edge_list, write_parent_array};
use rptree::{
    predicted_leaders, prufer_decode, prufer_encode, prufer_encode_with, reversal_check, rp_decode,
    rp_decode_annotated, rp_encode, CodeSpace, LabeledTree, LeafOrder, RootPolicy, RpCode,
};

/// Any sequence in `[1, n]^(n-1)` is an RP-code; its tree is rooted at the
/// first entry.
fn code_strategy(max_n: usize) -> impl Strategy<Value = RpCode> {
    sized_code_strategy(1, max_n)
}

fn sized_code_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = RpCode> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1..=n, n - 1)
            .prop_map(move |entries| RpCode::new(n, entries).unwrap())
    })
}

fn tree_strategy(max_n: usize) -> impl Strategy<Value = LabeledTree> {
    code_strategy(max_n).prop_map(|c| rp_decode(&c))
}

/// Leaders straight from the definition: `v` is the smallest label in its
/// own subtree.
fn brute_leaders(tree: &LabeledTree) -> Vec<usize> {
    (1..=tree.n())
        .filter(|&v| tree.descendants(v).unwrap().into_iter().all(|d| d >= v))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn decode_then_encode(code in code_strategy(30)) {
        let tree = rp_decode(&code);
        prop_assert_eq!(rp_encode(&tree), code);
    }

    #[test]
    fn encode_then_decode(tree in tree_strategy(30), root_seed in 0usize..1000) {
        let rerooted = tree.reroot(root_seed % tree.n() + 1).unwrap();
        prop_assert_eq!(rp_decode(&rp_encode(&rerooted)), rerooted);
    }

    #[test]
    fn first_entry_and_root_degree(tree in tree_strategy(30)) {
        let code = rp_encode(&tree);
        if tree.n() > 1 {
            prop_assert_eq!(code.entries()[0], tree.root());
        }
        let hits = code.entries().iter().filter(|&&e| e == tree.root()).count();
        prop_assert_eq!(hits, tree.degree(tree.root()).unwrap());
    }

    #[test]
    fn annotations_predict_leaders(tree in tree_strategy(25), root_seed in 0usize..1000) {
        let tree = tree.reroot(root_seed % tree.n() + 1).unwrap();
        let (decoded, notes) = rp_decode_annotated(&rp_encode(&tree));
        prop_assert_eq!(&decoded, &tree);
        prop_assert_eq!(notes.len(), tree.n());
        let leaders = tree.leaders();
        prop_assert_eq!(&leaders, &brute_leaders(&tree));
        prop_assert_eq!(predicted_leaders(&notes), leaders);
    }

    #[test]
    fn choice_count_is_position(code in code_strategy(12)) {
        let n = code.n();
        for i in 0..n.saturating_sub(1) {
            prop_assert_eq!(leader_choice_count(n, &code.entries()[..i]).unwrap(), i + 1);
        }
    }

    #[test]
    fn tie_break(tree in tree_strategy(30)) {
        prop_assert!(tie_break_is_unique(&tree));
    }

    #[test]
    fn prufer_round_trip(code in sized_code_strategy(2, 30)) {
        let tree = rp_decode(&code).reroot(1).unwrap();
        for order in [LeafOrder::Smallest, LeafOrder::Largest] {
            let code = prufer_encode_with(&tree, order).unwrap();
            prop_assert_eq!(code.entries().len(), tree.n().saturating_sub(2));
            prop_assert_eq!(prufer_decode(&code), tree.clone());
        }
    }

    #[test]
    fn reversed_prufer_is_rp(code in sized_code_strategy(2, 30)) {
        prop_assert!(reversal_check(&rp_decode(&code).reroot(1).unwrap()).unwrap());
    }

    #[test]
    fn text_formats_round_trip(tree in tree_strategy(20), root_seed in 0usize..1000) {
        let tree = tree.reroot(root_seed % tree.n() + 1).unwrap();
        prop_assert_eq!(parse_tree(&write_parent_array(&tree)).unwrap(), tree.clone());
        prop_assert_eq!(parse_tree(&write_edge_list(&tree)).unwrap(), tree);
    }
}

#[test]
fn code_space_is_a_bijection_onto_trees() {
    for n in 1..=6 {
        for policy in [RootPolicy::RootOne, RootPolicy::AllRoots] {
            let space = CodeSpace::new(n, policy).unwrap();
            let trees: std::collections::HashSet<LabeledTree> =
                space.iter().map(|c| rp_decode(&c)).collect();
            assert_eq!(trees.len() as u64, space.len(), "n={n} {policy:?}");
            for (i, code) in space.iter().enumerate() {
                assert_eq!(space.index_of(&code), Some(i as u64));
                assert_eq!(space.code_at(i as u64), code);
            }
        }
    }
}

#[test]
fn classic_prufer_counterexample() {
    // The smallest-leaf-first code read backwards is not the RP-code here.
    let tree = LabeledTree::from_parent_array(&[0, 1, 1, 2]).unwrap();
    assert_eq!(prufer_encode(&tree).unwrap().extended(), vec![1, 2, 1]);
    assert_eq!(rp_encode(&tree).entries(), &[1, 1, 2]);
    assert_eq!(
        prufer_encode_with(&tree, LeafOrder::Largest)
            .unwrap()
            .extended(),
        vec![2, 1, 1]
    );
}
