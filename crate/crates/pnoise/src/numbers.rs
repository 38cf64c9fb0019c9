use pnoise_core::exactalg::Rational;

/// Parses `a`, `a/b` or a decimal such as `-1.25` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((int_part, frac)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac);
        if frac.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(format!("bad number '{s}'"));
        }
        let n: i64 = digits.parse().map_err(|_| format!("number '{s}' out of range"))?;
        let r = Rational::new(n, 10i64.pow(frac.len() as u32));
        return Ok(if neg { -r } else { r });
    }
    if let Some((_, d)) = s.split_once('/') {
        if d.trim().parse::<i64>().ok() == Some(0) {
            return Err(format!("zero denominator in '{s}'"));
        }
    }
    s.parse().map_err(|_| format!("bad number '{s}'"))
}

/// Comma-separated rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(parse_rational).collect()
}

/// Either a list `a,b,c` or a range `start:end:step` (end included).
pub fn parse_t_values(s: &str) -> Result<Vec<Rational>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (parse_rational(a)?, parse_rational(b)?, parse_rational(step)?);
            if step <= Rational::from_integer(0) {
                return Err("range step must be positive".into());
            }
            let mut out = Vec::new();
            let mut t = a;
            while t <= b {
                out.push(t);
                t += step;
                if out.len() > 100_000 {
                    return Err("range has too many points".into());
                }
            }
            Ok(out)
        }
        [_] => parse_rational_list(s),
        _ => Err(format!("expected a list or start:end:step, got '{s}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pnoise_core::exactalg::rat;

    #[test]
    fn numbers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_t_values("0:1:1/2").unwrap(), vec![rat(0, 1), rat(1, 2), rat(1, 1)]);
        assert_eq!(parse_t_values("1,3/2").unwrap(), vec![rat(1, 1), rat(3, 2)]);
    }
}
