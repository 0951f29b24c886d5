use pencil_persist_cli::MatrixFile;
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        -1e3f64..1e3,
        Just(0.0),
        Just(-0.0),
    ]
}

proptest! {
    #[test]
    fn write_then_read_is_bit_exact(n in 1usize..=6, seed in prop::collection::vec((finite(), finite()), 36)) {
        let entries: Vec<[f64; 2]> = seed.into_iter().take(n * n).map(|(a, b)| [a, b]).collect();
        let file = MatrixFile { n, entries };
        let text = file.to_json();
        let back = MatrixFile::from_json(&text).unwrap();
        prop_assert_eq!(back.n, n);
        for (a, b) in file.entries.iter().flatten().zip(back.entries.iter().flatten()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        // The text itself is stable under a second pass.
        prop_assert_eq!(back.to_json(), text);
        let m = file.to_matrix().unwrap();
        prop_assert_eq!(MatrixFile::from_matrix(&m), file);
    }
}
