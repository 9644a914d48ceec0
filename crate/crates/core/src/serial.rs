//! Deterministic JSON output.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! that identical inputs give byte-identical documents.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Pretty-printing formatter with fixed-width float output.
pub struct FixedFloatFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for FixedFloatFormatter<'_> {
    fn default() -> Self {
        FixedFloatFormatter { inner: PrettyFormatter::with_indent(b"  ") }
    }
}

fn write_float<W: ?Sized + Write>(writer: &mut W, value: f64) -> io::Result<()> {
    // Non-finite values never reach the formatter; serde_json writes them as null.
    let value = if value == 0.0 { 0.0 } else { value };
    write!(writer, "{value:.16e}")
}

impl Formatter for FixedFloatFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write_float(writer, value)
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write_float(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes with [`FixedFloatFormatter`], newline-terminated.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloatFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    // serde_json only emits UTF-8.
    Ok(String::from_utf8(buf).expect("serde_json output is UTF-8"))
}

/// Same float formatting, for CSV cells.
pub fn format_float(value: f64) -> String {
    let mut out = Vec::new();
    write_float(&mut out, value).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-0.0), "0.0000000000000000e0");
        let s = to_json(&vec![c(1.5, -2.0)]).unwrap();
        assert!(s.contains("1.5000000000000000e0") && s.contains("-2.0000000000000000e0"), "{s}");
    }

    #[test]
    fn round_trips_exactly() {
        let x = std::f64::consts::PI / 7.0;
        let back: f64 = format_float(x).parse().unwrap();
        assert_eq!(back, x);
        let v: serde_json::Value = serde_json::from_str(&to_json(&[x, f64::NAN]).unwrap()).unwrap();
        assert_eq!(v[0].as_f64(), Some(x));
        assert!(v[1].is_null());
    }
}
