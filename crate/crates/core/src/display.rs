//! Shared text rendering of linear combinations, in the same syntax the
//! expression parser accepts.

use std::fmt::{self, Write};

use crate::cyclotomic::Cyc;

/// Writes `Σ c_i * label_i`, skipping zero coefficients. Rational
/// coefficients print bare, others in parentheses; a unit coefficient is
/// omitted.
pub fn write_combination<'a, I>(f: &mut impl Write, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Cyc, String)>,
{
    let mut first = true;
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        match c.as_rat() {
            Some(r) => {
                let neg = r.is_negative();
                if first {
                    if neg {
                        f.write_char('-')?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                let mag = r.abs();
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
            }
            None => {
                if !first {
                    f.write_str(" + ")?;
                }
                write!(f, "({c})*")?;
            }
        }
        f.write_str(&label)?;
        first = false;
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}

pub fn combination_string<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Cyc, String)>,
{
    let mut s = String::new();
    write_combination(&mut s, terms).expect("writing to a String cannot fail");
    s
}
