//! Line-based model files.
//!
//! A model file names its kind on the first meaningful line and describes
//! the model on the following ones. Blank lines and `#` comments are
//! ignored everywhere.
//!
//! ```text
//! kind cyclic-quotient
//! cyclic 5 : 1, 1, 3
//! ```
//!
//! ```text
//! kind monomial-quotient
//! dim 2
//! gen diag(1/4, 3/4)
//! gen mono(perm = [1, 0]; angles = [0, 1/2])
//! ```
//!
//! ```text
//! kind wps
//! weights 1, 1, 2
//! ```
//!
//! A `kind toric` file continues with fan text: `rank`, optional `latgen`
//! lines refining the lattice, then `ray` and `cone` lines.

use stringy_mckay::monomial::{parse_generator, MonomialGroup};
use stringy_mckay::orbifold::OrbifoldModel;
use stringy_mckay::toric;
use stringy_mckay::{Error, Int};

pub fn parse_model(text: &str, cap: u64) -> Result<OrbifoldModel<Int>, Error> {
    let mut lines = meaningful_lines(text);
    let Some((kind_no, kind_line)) = lines.next() else {
        return Err(Error::parse(1, "empty model file"));
    };
    let Some(kind) = kind_line.strip_prefix("kind ") else {
        return Err(Error::parse(kind_no, "expected 'kind <model kind>' first"));
    };
    match kind.trim() {
        "cyclic-quotient" => {
            let Some((no, line)) = lines.next() else {
                return Err(Error::parse(kind_no, "expected a 'cyclic r : w1, ..., wn' line"));
            };
            if !line.starts_with("cyclic") {
                return Err(Error::parse(no, "expected 'cyclic r : w1, ..., wn'"));
            }
            let gen = parse_generator(line).map_err(|e| Error::parse(no, e.to_string()))?;
            reject_extra(lines)?;
            let group = MonomialGroup::close(gen.dim(), vec![gen], cap)?;
            Ok(OrbifoldModel::LocalQuotient(group))
        }
        "monomial-quotient" => {
            let mut dim: Option<usize> = None;
            let mut gens = Vec::new();
            for (no, line) in lines {
                if let Some(rest) = line.strip_prefix("dim ") {
                    let d = rest.trim().parse::<usize>().map_err(|_| {
                        Error::parse(no, format!("bad dimension '{}'", rest.trim()))
                    })?;
                    dim = Some(d);
                } else if let Some(rest) = line.strip_prefix("gen ") {
                    gens.push(parse_generator(rest).map_err(|e| Error::parse(no, e.to_string()))?);
                } else {
                    return Err(Error::parse(no, format!("unexpected line '{line}'")));
                }
            }
            let Some(first) = gens.first() else {
                return Err(Error::parse(kind_no, "monomial model requires at least one generator"));
            };
            let n = dim.unwrap_or_else(|| first.dim());
            let group = MonomialGroup::close(n, gens, cap)?;
            Ok(OrbifoldModel::LocalQuotient(group))
        }
        "wps" => {
            let Some((no, line)) = lines.next() else {
                return Err(Error::parse(kind_no, "expected a 'weights w1, ..., wn' line"));
            };
            let Some(rest) = line.strip_prefix("weights ") else {
                return Err(Error::parse(no, "expected 'weights w1, ..., wn'"));
            };
            let weights = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::parse(no, format!("bad weight '{}'", t.trim())))
                })
                .collect::<Result<Vec<i64>, Error>>()?;
            reject_extra(lines)?;
            Ok(OrbifoldModel::WeightedProjective(weights))
        }
        "toric" => {
            // Everything after the kind line is fan text; keep the file's
            // own line numbers in diagnostics.
            let offset = kind_no;
            let rest: String = text
                .lines()
                .skip(offset)
                .map(|l| format!("{l}\n"))
                .collect();
            if !meaningful_lines(&rest).any(|(_, l)| l.starts_with("ray")) {
                return Err(Error::parse(kind_no, "toric model requires at least one ray"));
            }
            if !meaningful_lines(&rest).any(|(_, l)| l.starts_with("cone")) {
                return Err(Error::parse(kind_no, "toric model requires at least one cone"));
            }
            let fan = toric::parse_text(&rest).map_err(|e| match e {
                Error::Parse { line, msg } => Error::Parse { line: line + offset, msg },
                other => other,
            })?;
            Ok(OrbifoldModel::Toric(fan))
        }
        other => Err(Error::parse(
            kind_no,
            format!("unknown model kind '{other}' (expected cyclic-quotient, monomial-quotient, toric, wps)"),
        )),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn reject_extra<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<(), Error> {
    match lines.next() {
        None => Ok(()),
        Some((no, line)) => Err(Error::parse(no, format!("unexpected line '{line}'"))),
    }
}
