//! Coefficients frozen from an independent walk counter (exact fractions,
//! separately built blow-ups), compared with the functional-equation product.

use num_rational::BigRational;
use selfsim_green::cell::builtin;
use selfsim_green::green::cell_functions;
use selfsim_green::iteration::green_series;

fn parse(xs: &[&str]) -> Vec<BigRational> {
    xs.iter().map(|s| s.parse().unwrap()).collect()
}

fn series(name: &str, order: usize) -> Vec<BigRational> {
    let cf = cell_functions(&builtin(name).unwrap()).unwrap();
    green_series(&cf, order).unwrap().series.into_coeffs()
}

#[test]
fn diamond_through_z20() {
    let expected = parse(&[
        "1", "0", "1/3", "0", "2/9", "0", "5/27", "0", "40/243", "0", "109/729", "0", "100/729", "0", "277/2187", "0",
        "6941/59049", "0", "19412/177147", "0", "54512/531441",
    ]);
    assert_eq!(series("diamond", 20), expected);
}

#[test]
fn path2_through_z20() {
    let expected = parse(&[
        "1", "0", "1/2", "0", "3/8", "0", "5/16", "0", "35/128", "0", "63/256", "0", "231/1024", "0", "429/2048", "0",
        "6435/32768", "0", "12155/65536", "0", "46189/262144",
    ]);
    assert_eq!(series("path2", 20), expected);
}

#[test]
fn sierpinski_through_z20() {
    let expected = parse(&[
        "1",
        "0",
        "1/4",
        "1/16",
        "1/8",
        "19/256",
        "87/1024",
        "139/2048",
        "547/8192",
        "3885/65536",
        "3687/65536",
        "54557/1048576",
        "25815/524288",
        "48663/1048576",
        "1481659/33554432",
        "5647461/134217728",
        "5407985/134217728",
        "166122047/4294967296",
        "639864469/17179869184",
        "1235061509/34359738368",
        "9556884073/274877906944",
    ]);
    assert_eq!(series("sierpinski", 20), expected);
}

#[test]
fn diamond_cell_green_eighth_coefficient() {
    use selfsim_green::green::green_entry;
    let g = builtin("diamond").unwrap();
    let f00 = green_entry(&g.transition_matrix(), 0, 0).series(9).unwrap();
    assert_eq!(f00.coeffs()[8], "14/81".parse().unwrap());
}
