//! Property tests over arbitrary tables (not just the harness's own
//! generators): the order structure of homsets and the absorption laws
//! hold for whatever proptest throws at them.

use itegory::wand::kleene_wand0;
use itegory::{FinObj, InterferenceRel, PartialMap};
use proptest::prelude::*;

fn arb_table(dom: usize, cod: usize) -> impl Strategy<Value = Vec<Option<usize>>> {
    prop::collection::vec(prop::option::of(0..cod.max(1)), dom)
}

fn arb_map(dom: usize, cod: usize) -> impl Strategy<Value = PartialMap> {
    arb_table(dom, cod).prop_map(move |t| {
        let t = if cod == 0 { vec![None; dom] } else { t };
        PartialMap::new(FinObj::of_size(dom), FinObj::of_size(cod), t).unwrap()
    })
}

proptest! {
    #[test]
    fn leq_is_a_partial_order(
        f in arb_map(5, 4),
        g in arb_map(5, 4),
        h in arb_map(5, 4),
    ) {
        prop_assert!(f.leq(&f).unwrap());
        if f.leq(&g).unwrap() && g.leq(&f).unwrap() {
            prop_assert_eq!(&f, &g);
        }
        if f.leq(&g).unwrap() && g.leq(&h).unwrap() {
            prop_assert!(f.leq(&h).unwrap());
        }
    }

    #[test]
    fn composition_is_monotone_and_zero_absorbs(
        f in arb_map(4, 4),
        g in arb_map(4, 4),
        h in arb_map(4, 4),
    ) {
        if f.leq(&g).unwrap() {
            let hf = h.compose(&f).unwrap();
            let hg = h.compose(&g).unwrap();
            prop_assert!(hf.leq(&hg).unwrap());
            // the restriction operation is monotone too
            prop_assert!(f.restriction().leq(g.restriction().as_map()).unwrap());
        }
        let zero = PartialMap::zero(f.dom(), f.dom());
        prop_assert!(zero.compose(&f).unwrap().is_zero());
        prop_assert!(f.compose(&PartialMap::zero(f.cod(), f.cod())).unwrap().is_zero());
        prop_assert!(zero.leq(&f).unwrap());
    }

    #[test]
    fn restriction_axioms_hold_for_arbitrary_tables(
        f in arb_map(5, 3),
        g in arb_map(5, 3),
    ) {
        // f̄;f = f and f̄;ḡ = ḡ;f̄ and (ḡ;f)‾ = ḡ;f̄
        prop_assert_eq!(f.restriction().compose(&f).unwrap(), f.clone());
        let rf = f.restriction().into_map();
        let rg = g.restriction().into_map();
        prop_assert_eq!(rf.compose(&rg).unwrap(), rg.compose(&rf).unwrap());
        let lhs = rg.compose(&f).unwrap().restriction().into_map();
        prop_assert_eq!(lhs, rg.compose(&rf).unwrap());
    }

    #[test]
    fn iteration_result_is_disjoint_extension_of_exit(
        table in arb_table(5, 5),
        exit_targets in prop::collection::vec(prop::option::of(0..3usize), 5),
    ) {
        // carve a disjoint pair out of arbitrary data: the exit wins ties
        let x = FinObj::of_size(5);
        let a = FinObj::of_size(3);
        let exit = PartialMap::new(x.clone(), a.clone(), exit_targets).unwrap();
        let body_table: Vec<Option<usize>> = table
            .iter()
            .zip(exit.table())
            .map(|(b, e)| if e.is_some() { None } else { *b })
            .collect();
        let body = PartialMap::new(x.clone(), x.clone(), body_table).unwrap();
        let w = kleene_wand0(&body, &exit).unwrap();
        // the exit is below the result, and the result is defined only
        // where some iterate eventually reaches the exit's domain
        prop_assert!(exit.leq(&w).unwrap());
        let rel = InterferenceRel::maximal();
        prop_assert!(rel.perp(&body.compose(&w).unwrap(), &exit).unwrap());
    }
}
