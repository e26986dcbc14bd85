//! `serialize_with` helpers that render big numbers as decimal strings, so
//! JSON consumers never see a lossy float.

use serde::ser::{SerializeSeq, Serializer};
use std::fmt::Display;

pub fn one<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn many<T: Display, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}
