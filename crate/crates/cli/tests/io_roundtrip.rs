//! Matrix file encodings.

use anchor_cli::io::{
    decode_binary, encode_binary, parse_csv_matrix, read_matrix, write_csv_matrix, write_matrix,
};
use ndarray::Array2;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Array2<f64>> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop_oneof![
                any::<f64>().prop_filter("finite", |v| v.is_finite()),
                -1e3f64..1e3,
                Just(0.0),
                Just(-0.0),
                Just(f64::MIN_POSITIVE),
            ],
            r * c,
        )
        .prop_map(move |v| Array2::from_shape_vec((r, c), v).unwrap())
    })
}

fn bits(m: &Array2<f64>) -> Vec<u64> {
    m.iter().map(|v| v.to_bits()).collect()
}

proptest! {
    #[test]
    fn binary_is_bit_exact(m in matrix()) {
        let back = decode_binary(&encode_binary(&m)).unwrap();
        prop_assert_eq!(back.dim(), m.dim());
        prop_assert_eq!(bits(&back), bits(&m));
    }

    #[test]
    fn csv_is_within_1e_15(m in matrix()) {
        let back = parse_csv_matrix(&write_csv_matrix(&m)).unwrap();
        prop_assert_eq!(back.dim(), m.dim());
        for (a, b) in back.iter().zip(m.iter()) {
            prop_assert!((a - b).abs() <= 1e-15 * b.abs());
        }
    }
}

#[test]
fn files_round_trip_through_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let m = Array2::from_shape_fn((5, 3), |(i, j)| (i as f64 + 0.1) / (j as f64 + 3.0));
    for name in ["m.csv", "m.bin", "m.aem"] {
        let path = dir.path().join(name);
        write_matrix(&path, &m).unwrap();
        assert_eq!(bits(&read_matrix(&path).unwrap()), bits(&m), "{name}");
    }
}

#[test]
fn malformed_inputs_name_their_location() {
    let err = parse_csv_matrix("0,1\n1,0,2\n").unwrap_err().to_string();
    assert!(err.contains("line 2"), "{err}");
    let mut bytes = encode_binary(&Array2::zeros((2, 2)));
    bytes.truncate(bytes.len() - 3);
    let err = decode_binary(&bytes).unwrap_err().to_string();
    assert!(err.contains("byte"), "{err}");
}
