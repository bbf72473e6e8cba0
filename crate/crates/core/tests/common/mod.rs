#![allow(dead_code)]

use tilt_core::corpus::load_corpus;
use tilt_core::exactalg::{Field, Matrix, PrimeField, Rationals};
use tilt_core::quiveralg::Algebra;
use tilt_core::repmod::Rep;

pub fn q(name: &str, n: Option<usize>) -> Algebra<Rationals> {
    load_corpus(name, n).unwrap().build(&Rationals).unwrap()
}

pub fn fp(name: &str, n: Option<usize>, p: u64) -> Algebra<PrimeField> {
    load_corpus(name, n).unwrap().build(&PrimeField::new(p).unwrap()).unwrap()
}

pub fn rep<K: Field>(alg: &Algebra<K>, dims: &[usize], maps: &[&[&[i64]]]) -> Rep<K> {
    let k = alg.field();
    let mats = alg
        .quiver()
        .arrows()
        .iter()
        .zip(maps)
        .map(|(arr, rows)| {
            if rows.is_empty() {
                Matrix::zeros(k, dims[arr.target], dims[arr.source])
            } else {
                Matrix::from_i64(k, rows)
            }
        })
        .collect();
    Rep::new(alg, dims.to_vec(), mats).unwrap()
}
