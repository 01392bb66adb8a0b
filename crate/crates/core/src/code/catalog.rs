//! Named qubit codes used throughout the tests and the CLI.

use crate::error::{Error, Result};
use crate::pauli::PauliProduct;
use crate::primefield::Prime;

use super::StabilizerCode;

pub const CATALOG_NAMES: [&str; 5] = ["cnot_2_1", "ghz_n", "five_qubit", "four_two_two", "steane"];

fn qubit() -> Prime {
    Prime::new(2).expect("2 is prime")
}

fn strings(ps: &[&str]) -> Vec<PauliProduct> {
    ps.iter().map(|s| s.parse().expect("catalog strings are well formed")).collect()
}

/// Looks up a catalog code. `size` is the carrier count for `ghz_n` and is
/// ignored by the fixed-size codes.
pub fn catalog(name: &str, size: Option<usize>) -> Result<StabilizerCode> {
    let d = qubit();
    match name {
        "cnot_2_1" => StabilizerCode::validated(name, d, 2, 1, strings(&["ZZ"]), strings(&["XX"]), strings(&["ZI"])),
        "ghz_n" => {
            let n = size.ok_or_else(|| Error::input("ghz_n needs a carrier count (n >= 2)"))?;
            if !(2..=20).contains(&n) {
                return Err(Error::input(format!("ghz_n supports 2 <= n <= 20, got {n}")));
            }
            let stabs = (0..n - 1)
                .map(|i| {
                    let mut z = vec![0; n];
                    z[i] = 1;
                    z[i + 1] = 1;
                    PauliProduct::new(d, vec![0; n], z, 0)
                })
                .collect::<Result<Vec<_>>>()?;
            let lx = PauliProduct::new(d, vec![1; n], vec![0; n], 0)?;
            let lz = PauliProduct::z_on(d, n, 0, 1);
            StabilizerCode::validated(format!("ghz_{n}"), d, n, 1, stabs, vec![lx], vec![lz])
        }
        "five_qubit" => StabilizerCode::validated(
            name,
            d,
            5,
            1,
            strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]),
            strings(&["XXXXX"]),
            strings(&["ZZZZZ"]),
        ),
        "four_two_two" => StabilizerCode::validated(
            name,
            d,
            4,
            2,
            strings(&["XXXX", "ZZZZ"]),
            strings(&["XXII", "XIXI"]),
            strings(&["ZIZI", "ZZII"]),
        ),
        "steane" => StabilizerCode::validated(
            name,
            d,
            7,
            1,
            strings(&["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]),
            strings(&["XXXXXXX"]),
            strings(&["ZZZZZZZ"]),
        ),
        other => Err(Error::input(format!("unknown catalog code {other:?}; known: {}", CATALOG_NAMES.join(", ")))),
    }
}
