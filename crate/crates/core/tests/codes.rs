use graphcode::c1::C1Code;
use graphcode::c2::{adjacency_bits, cover_weight, cover_weight_brute_force, ArrayCode};
use graphcode::gflinalg::GfMatrix;
use graphcode::mds::MdsCode;
use graphcode::{Field, Gf};
use proptest::prelude::*;

fn failed_set(n: usize, rho: usize, picks: &[usize]) -> Vec<usize> {
    let mut nodes: Vec<usize> = (0..n).collect();
    picks.iter().take(rho).map(|&p| nodes.remove(p % nodes.len())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn c1_recovers_any_rho_nodes(n in 4usize..10, rho in 1usize..4, seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 3)) {
        prop_assume!(rho < n);
        let code = C1Code::new(n, rho).unwrap();
        let size = code.alphabet().field().size();
        let k = code.k();
        let info: Vec<Vec<Gf>> = (0..k)
            .map(|a| (0..k).map(|b| Gf((seed.rotate_left((a * k + b) as u32) % size) as u32)).collect())
            .collect();
        let g = code.encode(&info).unwrap();
        prop_assert!(code.check(&g));
        let f = failed_set(n, rho, &picks);
        prop_assert_eq!(code.decode(&g.erase_nodes(&f).unwrap(), &f).unwrap(), g);
    }

    #[test]
    fn c2_recovers_any_rho_nodes(n in 5usize..10, rho in 1usize..3, seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 2)) {
        prop_assume!(2 * rho < n);
        let code = ArrayCode::gabidulin(n, rho).unwrap();
        let bits: Vec<bool> = (0..code.dimension()).map(|t| seed.rotate_left(t as u32) & 1 == 1).collect();
        let g = code.encode_bits(&bits);
        prop_assert!(code.check(&g));
        let f = failed_set(n, rho, &picks);
        prop_assert_eq!(code.decode(&g.erase_nodes(&f).unwrap(), &f).unwrap(), g.clone());
        if bits.iter().any(|&b| b) {
            let m = adjacency_bits(&g);
            prop_assert!(m.rank() > 2 * rho);
            prop_assert!(cover_weight(&m) >= m.rank());
        }
    }

    #[test]
    fn cover_weight_matches_brute_force(rows in prop::collection::vec(prop::collection::vec(0u8..2, 5), 5)) {
        let m = graphcode::gflinalg::BitMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(cover_weight(&m), cover_weight_brute_force(&m));
    }

    #[test]
    fn mds_decodes_up_to_rho_erasures(n in 3usize..17, rho in 1usize..4, seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 3)) {
        prop_assume!(rho < n);
        let code = MdsCode::reed_solomon(n, rho).unwrap();
        let size = code.field().size();
        let info: Vec<Gf> = (0..code.k()).map(|t| Gf((seed.rotate_left(7 * t as u32) % size) as u32)).collect();
        let word = code.encode(&info).unwrap();
        prop_assert_eq!(&word[..code.k()], &info[..]);
        let f = failed_set(n, rho, &picks);
        let erased: Vec<Option<Gf>> = word.iter().enumerate().map(|(t, &v)| (!f.contains(&t)).then_some(v)).collect();
        prop_assert_eq!(code.decode_erasures(&erased).unwrap(), word);
    }

    #[test]
    fn field_inverse(m in 1u32..17, a in 1u32..u32::MAX) {
        let f = Field::new(m).unwrap();
        let a = Gf(a % (f.size() as u32 - 1) + 1);
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
    }
}
