//! Parsing of field specs, element lists and polynomials from the command
//! line. Field elements are written as their canonical indices.

use amcodes::gf::prime_power;
use amcodes::{Field, FieldElement, MultiPoly, SymCombo};

/// `q`, either as a number (`9`) or as `p^e` (`3^2`), with an optional
/// modulus given as comma-separated coefficients, constant term first.
pub fn parse_field(spec: &str, modulus: Option<&str>) -> Result<Field, String> {
    let (p, e) = parse_order(spec)?;
    let modulus = modulus.map(parse_u32_list).transpose()?;
    Field::new(p, e, modulus.as_deref()).map_err(|e| e.to_string())
}

/// `(p, e)` for a field spec.
pub fn parse_order(spec: &str) -> Result<(u32, u32), String> {
    let spec = spec.trim();
    match spec.split_once('^') {
        Some((p, e)) => {
            let p = p.trim().parse::<u32>().map_err(|_| format!("invalid field spec '{spec}'"))?;
            let e = e.trim().parse::<u32>().map_err(|_| format!("invalid field spec '{spec}'"))?;
            Ok((p, e))
        }
        None => {
            let q = spec.parse::<u32>().map_err(|_| format!("invalid field spec '{spec}'"))?;
            prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))
        }
    }
}

pub fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("invalid integer '{}'", t.trim())))
        .collect()
}

pub fn parse_elements(field: &Field, s: &str) -> Result<Vec<FieldElement>, String> {
    parse_u32_list(s)?
        .into_iter()
        .map(|i| field.elem(i).map_err(|e| e.to_string()))
        .collect()
}

/// `a0,...,am` as `sum a_i sigma^i`.
pub fn parse_sym_combo(field: &Field, m: usize, s: &str) -> Result<SymCombo, String> {
    SymCombo::new(field, m, parse_elements(field, s)?).map_err(|e| e.to_string())
}

/// A polynomial written like `3*x1^2*x2 - x3 + 5`: terms joined by `+` or
/// `-`, factors by `*`, variables `x1..xm`, coefficients as element
/// indices (a leading `-` negates).
pub fn parse_poly(field: &Field, m: usize, s: &str) -> Result<MultiPoly, String> {
    let mut out = MultiPoly::zero(field, m);
    let mut term = String::new();
    let mut negative = false;
    let flush = |term: &str, negative: bool, out: &mut MultiPoly| -> Result<(), String> {
        let t = term.trim();
        if t.is_empty() {
            return Err(format!("empty term in '{s}'"));
        }
        let mut p = parse_term(field, m, t)?;
        if negative {
            p = -&p;
        }
        *out = &*out + &p;
        Ok(())
    };
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && !(i == 0 || s[..i].trim().is_empty()) {
            flush(&term, negative, &mut out)?;
            term.clear();
            negative = ch == '-';
        } else if ch == '-' {
            negative = !negative;
        } else if ch != '+' {
            term.push(ch);
        }
    }
    flush(&term, negative, &mut out)?;
    Ok(out)
}

fn parse_term(field: &Field, m: usize, t: &str) -> Result<MultiPoly, String> {
    let mut coeff = field.one();
    let mut exps = vec![0u32; m];
    for factor in t.split('*').map(str::trim) {
        if let Some(var) = factor.strip_prefix('x') {
            let (idx, pow) = match var.split_once('^') {
                Some((i, e)) => (i, e.trim().parse::<u32>().map_err(|_| format!("invalid exponent in '{factor}'"))?),
                None => (var, 1),
            };
            let idx: usize = idx.trim().parse().map_err(|_| format!("invalid variable '{factor}'"))?;
            if idx == 0 || idx > m {
                return Err(format!("variable x{idx} out of range for m = {m}"));
            }
            exps[idx - 1] += pow;
        } else {
            let c: u32 = factor.parse().map_err(|_| format!("invalid factor '{factor}'"))?;
            coeff = field.mul(coeff, field.elem(c).map_err(|e| e.to_string())?);
        }
    }
    Ok(MultiPoly::monomial(field, coeff, exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!(parse_field("9", None).unwrap().order(), 9);
        let k = parse_field("3^2", Some("2,2,1")).unwrap();
        assert_eq!(k.modulus(), &[2, 2, 1]);
        assert!(parse_field("6", None).is_err());
        assert!(parse_field("3^2", Some("1,0,0,1")).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let k = parse_field("7", None).unwrap();
        let p = parse_poly(&k, 3, "3*x1^2*x2 - x3 + 5").unwrap();
        assert_eq!(p.to_string(), "3*x1^2*x2 + 6*x3 + 5");
        assert_eq!(parse_poly(&k, 3, &p.to_string()).unwrap(), p);
        assert_eq!(parse_poly(&k, 2, "-x1").unwrap().to_string(), "6*x1");
        assert!(parse_poly(&k, 2, "x3").is_err());
        assert!(parse_poly(&k, 2, "x1 + ").is_err());
    }
}
