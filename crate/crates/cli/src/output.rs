//! JSON encodings. Rationals are "p/q" strings; complex floats carry their
//! precision and enough decimal digits to round-trip.

use jacobi_core::arith_series::{GramLattice, Rat};
use jacobi_core::exact::gauss::rat_to_string;
use jacobi_core::numeric::Cplx;
use serde_json::{json, Value};

pub fn rat(q: &Rat) -> Value {
    Value::String(rat_to_string(q))
}

pub fn cplx(z: &Cplx) -> Value {
    let (re, im) = z.to_decimal_pair();
    json!({ "re": re, "im": im, "bits": z.prec() })
}

pub fn lattice(l: &GramLattice) -> Value {
    json!(l.to_strings())
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}
