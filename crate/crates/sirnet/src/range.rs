//! Value lists on the command line: `1.5`, `0.1,1,10` or `a:step:b`.

use crate::error::AppError;

/// Parses a comma list whose items are numbers or inclusive `a:step:b`
/// ranges. Range ends are hit exactly; interior points are `a + k step`.
pub fn parse_reals(s: &str) -> Result<Vec<f64>, AppError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [x] => out.push(number(x)?),
            [a, step, b] => {
                let (a, step, b) = (number(a)?, number(step)?, number(b)?);
                if step <= 0.0 || b < a {
                    return Err(AppError::Usage(format!("range {item} needs a positive step and a <= b")));
                }
                let n = ((b - a) / step + 1e-9).floor() as u64;
                if n > 1_000_000 {
                    return Err(AppError::Usage(format!("range {item} has too many points")));
                }
                out.extend((0..=n).map(|k| a + k as f64 * step));
                if let Some(last) = out.last_mut() {
                    if (*last - b).abs() <= 1e-9 * step {
                        *last = b;
                    }
                }
            }
            _ => return Err(AppError::Usage(format!("cannot parse {item:?} as a value or a:step:b range"))),
        }
    }
    if out.is_empty() {
        return Err(AppError::Usage("empty value list".into()));
    }
    Ok(out)
}

/// Integer version of [`parse_reals`]; `a:b` means step 1.
pub fn parse_ints(s: &str) -> Result<Vec<u32>, AppError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        let (a, step, b) = match parts.as_slice() {
            [x] => {
                let x = int(x)?;
                (x, 1, x)
            }
            [a, b] => (int(a)?, 1, int(b)?),
            [a, step, b] => (int(a)?, int(step)?, int(b)?),
            _ => return Err(AppError::Usage(format!("cannot parse {item:?} as an integer range"))),
        };
        if step == 0 || b < a {
            return Err(AppError::Usage(format!("range {item} needs a positive step and a <= b")));
        }
        out.extend((a..=b).step_by(step as usize));
    }
    if out.is_empty() {
        return Err(AppError::Usage("empty value list".into()));
    }
    Ok(out)
}

fn number(s: &str) -> Result<f64, AppError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| AppError::Usage(format!("{s:?} is not a finite number")))
}

fn int(s: &str) -> Result<u32, AppError> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| AppError::Usage(format!("{s:?} is not a nonnegative integer")))
}
