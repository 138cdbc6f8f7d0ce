use proptest::prelude::*;

use sasaki::format::{ScalarRepr, SeedFile};
use sasaki_core::lie::LieAlgebra;
use sasaki_core::metric::MetricLieAlgebra;
use sasaki_core::reduction::{KahlerSeed, PseudoKahler};
use sasaki_core::scalar::{int, q};
use sasaki_core::{Matrix, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_repr_roundtrip(s in scalar()) {
        let text = serde_json::to_string(&ScalarRepr::from(&s)).unwrap();
        let back: ScalarRepr = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_scalar().unwrap(), s);
    }

    /// Seed files survive JSON, whether or not they satisfy the hypotheses.
    #[test]
    fn seed_file_roundtrip(d in proptest::collection::vec(scalar(), 4), h in scalar(), sign in prop_oneof![Just(1i64), Just(-1)]) {
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(2).unwrap(), Matrix::identity(2).scale(&int(sign))).unwrap();
        let j = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        let seed = KahlerSeed::new(PseudoKahler::from_complex_structure(m, j), Matrix::from_fn(2, 2, |r, c| d[2 * r + c].clone()), h, int(sign));
        let text = serde_json::to_string(&SeedFile::from_seed(&seed)).unwrap();
        let back: SeedFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_seed().unwrap(), seed);
    }
}
