//! Line-oriented file formats: permutation groups, ramification types,
//! braid-word lists, and tuple reports.
//!
//! All formats share the conventions: `#` starts a comment (full-line or
//! trailing), blank lines are ignored, and parse errors carry the file name
//! and 1-based line number.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::exact::family::{CoverFamily, FactorRole, FamilyFactor};
use crate::exact::field::Rationals;
use crate::exact::poly::{Poly, QPoly};
use crate::group::PermGroup;
use crate::nielsen::{ClassDescriptor, InnerTupleClass, RamificationType};
use crate::perm::{parse_cycles, CycleType, Permutation};

use num_rational::BigRational;
use num_traits::Zero;

fn perr(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::parse(path.display().to_string(), line, msg)
}

fn ioerr(path: &Path, e: std::io::Error) -> Error {
    Error::io(path.display().to_string(), e)
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| ioerr(path, e))
}

/// Strip comments and return meaningful `(line_number, content)` pairs.
fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let no_comment = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let trimmed = no_comment.trim();
        if trimmed.is_empty() {
            None
        } else {
            Some((i + 1, trimmed))
        }
    })
}

// ---------------------------------------------------------------------------
// Group files
// ---------------------------------------------------------------------------

/// Read a permutation group file: a `degree <n>` line followed by one
/// generator per line in cycle notation (e.g. `(1,2,3)(4,5)`).
pub fn read_group_file(path: &Path) -> Result<PermGroup> {
    let text = read_to_string(path)?;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Permutation> = Vec::new();
    for (lineno, line) in meaningful_lines(&text) {
        if let Some(rest) = line.strip_prefix("degree") {
            if degree.is_some() {
                return Err(perr(path, lineno, "duplicate degree line"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| perr(path, lineno, "degree must be a positive integer"))?;
            if n == 0 {
                return Err(perr(path, lineno, "degree must be positive"));
            }
            degree = Some(n);
        } else if line.starts_with('(') {
            let n = degree
                .ok_or_else(|| perr(path, lineno, "generator before degree line"))?;
            let g = parse_cycles(n, line)
                .map_err(|e| perr(path, lineno, &format!("bad generator: {e}")))?;
            gens.push(g);
        } else {
            return Err(perr(
                path,
                lineno,
                &format!("expected `degree <n>` or a cycle-notation generator, got {line:?}"),
            ));
        }
    }
    let degree =
        degree.ok_or_else(|| perr(path, 1, "missing `degree <n>` line"))?;
    if gens.is_empty() {
        return Err(perr(path, 1, "group file lists no generators"));
    }
    PermGroup::new(degree, gens)
}

/// Write a permutation group file.
pub fn write_group_file(path: &Path, degree: usize, gens: &[Permutation], header: &str) -> Result<()> {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("degree {degree}\n"));
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| ioerr(path, e))
}

// ---------------------------------------------------------------------------
// Ramification-type files
// ---------------------------------------------------------------------------

/// Read a ramification-type file: a `group <path>` line (resolved relative
/// to the type file's directory) followed by `r` lines
/// `class <cycle_type> [size=<n>] [order=<k>]`.
pub fn read_type_file(path: &Path) -> Result<RamificationType> {
    let text = read_to_string(path)?;
    let mut group_path: Option<PathBuf> = None;
    let mut descriptors: Vec<ClassDescriptor> = Vec::new();
    for (lineno, line) in meaningful_lines(&text) {
        if let Some(rest) = line.strip_prefix("group") {
            if group_path.is_some() {
                return Err(perr(path, lineno, "duplicate group line"));
            }
            let rel = rest.trim();
            if rel.is_empty() {
                return Err(perr(path, lineno, "empty group path"));
            }
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            group_path = Some(base.join(rel));
        } else if let Some(rest) = line.strip_prefix("class") {
            let mut cycle_type: Option<CycleType> = None;
            let mut class_size: Option<usize> = None;
            let mut element_order: Option<u128> = None;
            for tok in rest.split_whitespace() {
                if let Some(v) = tok.strip_prefix("size=") {
                    let s = v.parse().map_err(|_| {
                        perr(path, lineno, &format!("bad size value {v:?}"))
                    })?;
                    class_size = Some(s);
                } else if let Some(v) = tok.strip_prefix("order=") {
                    let o = v.parse().map_err(|_| {
                        perr(path, lineno, &format!("bad order value {v:?}"))
                    })?;
                    element_order = Some(o);
                } else if cycle_type.is_none() {
                    let t = tok.parse().map_err(|e| {
                        perr(path, lineno, &format!("bad cycle type {tok:?}: {e}"))
                    })?;
                    cycle_type = Some(t);
                } else {
                    return Err(perr(
                        path,
                        lineno,
                        format!("unexpected token {tok:?} on class line"),
                    ));
                }
            }
            let cycle_type = cycle_type
                .ok_or_else(|| perr(path, lineno, "class line missing cycle type"))?;
            descriptors.push(ClassDescriptor { cycle_type, class_size, element_order });
        } else {
            return Err(perr(
                path,
                lineno,
                &format!("expected `group <path>` or `class <type> …`, got {line:?}"),
            ));
        }
    }
    let group_path = group_path
        .ok_or_else(|| perr(path, 1, "missing `group <path>` line"))?;
    if descriptors.is_empty() {
        return Err(perr(path, 1, "type file lists no classes"));
    }
    let group = Arc::new(read_group_file(&group_path)?);
    RamificationType::resolve(group, &descriptors)
}

// ---------------------------------------------------------------------------
// Braid-word files
// ---------------------------------------------------------------------------

/// Read a braid-word file: lines `word <name> <letters…>` where letters are
/// `Q<i>` / `Q<i>^<e>` (or `id` alone for the identity word).
pub fn read_word_file(path: &Path) -> Result<Vec<(String, BraidWord)>> {
    let text = read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, line) in meaningful_lines(&text) {
        let rest = line.strip_prefix("word").ok_or_else(|| {
            perr(path, lineno, &format!("expected `word <name> <letters…>`, got {line:?}"))
        })?;
        let rest = rest.trim();
        let (name, letters) = match rest.split_once(char::is_whitespace) {
            Some((n, l)) => (n, l.trim()),
            None if !rest.is_empty() => (rest, ""),
            _ => return Err(perr(path, lineno, "word line missing a name")),
        };
        let word: BraidWord = letters
            .parse()
            .map_err(|e| perr(path, lineno, &format!("bad braid word: {e}")))?;
        out.push((name.to_string(), word));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Polynomial files
// ---------------------------------------------------------------------------

/// Parse an exact rational written as `num`, `num/den`, or a decimal-free
/// signed integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.parse::<BigRational>()
        .map_err(|e| Error::Config(format!("bad rational {s:?}: {e}")))
}

/// Read a univariate polynomial over ℚ.
///
/// Two styles, not mixed in one file: sparse lines `term <coeff> <exponent>`
/// (repeated exponents accumulate), or one dense line
/// `coeffs <c0> <c1> …` listing coefficients from the constant term up.
/// Rationals are written `num` or `num/den`.
pub fn read_polynomial_file(path: &Path) -> Result<QPoly> {
    let text = read_to_string(path)?;
    let ring = Rationals;
    let mut terms: Vec<(BigRational, usize)> = Vec::new();
    let mut dense: Option<Vec<BigRational>> = None;
    for (lineno, line) in meaningful_lines(&text) {
        if let Some(rest) = line.strip_prefix("term") {
            if dense.is_some() {
                return Err(perr(path, lineno, "cannot mix `term` and `coeffs` styles"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(perr(path, lineno, "expected `term <coeff> <exponent>`"));
            }
            let c = parse_rational(toks[0])
                .map_err(|e| perr(path, lineno, e.to_string()))?;
            let e: usize = toks[1]
                .parse()
                .map_err(|_| perr(path, lineno, format!("bad exponent {:?}", toks[1])))?;
            terms.push((c, e));
        } else if let Some(rest) = line.strip_prefix("coeffs") {
            if dense.is_some() || !terms.is_empty() {
                return Err(perr(path, lineno, "cannot mix `term` and `coeffs` styles or repeat `coeffs`"));
            }
            let cs = rest
                .split_whitespace()
                .map(|t| parse_rational(t).map_err(|e| perr(path, lineno, e.to_string())))
                .collect::<Result<Vec<BigRational>>>()?;
            if cs.is_empty() {
                return Err(perr(path, lineno, "empty coefficient list"));
            }
            dense = Some(cs);
        } else {
            return Err(perr(
                path,
                lineno,
                &format!("expected `term <coeff> <exp>` or `coeffs <c0> <c1> …`, got {line:?}"),
            ));
        }
    }
    if let Some(cs) = dense {
        return Ok(Poly::from_coeffs(&ring, cs));
    }
    if terms.is_empty() {
        return Err(perr(path, 1, "polynomial file lists no terms"));
    }
    let top = terms.iter().map(|&(_, e)| e).max().unwrap();
    let mut coeffs = vec![BigRational::zero(); top + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(Poly::from_coeffs(&ring, coeffs))
}

/// Write a univariate polynomial over ℚ in the sparse `term` style,
/// highest exponent first, with an optional `#` header.
pub fn write_polynomial_file(path: &Path, poly: &QPoly, header: &str) -> Result<()> {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for (e, c) in poly.coeffs.iter().enumerate().rev() {
        if !c.is_zero() {
            out.push_str(&format!("term {c} {e}\n"));
        }
    }
    fs::write(path, out).map_err(|e| ioerr(path, e))
}

// ---------------------------------------------------------------------------
// Family files
// ---------------------------------------------------------------------------

/// Read a one-parameter cover family kept in published factored form.
///
/// Layout:
///
/// ```text
/// family <name>
/// degree <n>                  # declared degree of the numerator
/// param alpha = <rational>    # optional recorded specialization
/// factor <numer|denom> <exponent>
/// mono <coeff> <alpha-exp> <x-exp>   # coeff · α^a · X^e, repeatable
/// ```
///
/// Each `factor` line opens a factor; its `mono` lines list the factor's
/// monomials. A family with every `alpha-exp` zero is parameter-free.
pub fn read_family_file(path: &Path) -> Result<CoverFamily> {
    let text = read_to_string(path)?;
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut default_alpha: Option<BigRational> = None;
    let mut factors: Vec<FamilyFactor> = Vec::new();
    for (lineno, line) in meaningful_lines(&text) {
        if let Some(rest) = line.strip_prefix("family") {
            if name.is_some() {
                return Err(perr(path, lineno, "duplicate family line"));
            }
            let n = rest.trim();
            if n.is_empty() || n.split_whitespace().count() != 1 {
                return Err(perr(path, lineno, "expected `family <name>`"));
            }
            name = Some(n.to_string());
        } else if let Some(rest) = line.strip_prefix("degree") {
            if degree.is_some() {
                return Err(perr(path, lineno, "duplicate degree line"));
            }
            let d: usize = rest
                .trim()
                .parse()
                .map_err(|_| perr(path, lineno, "degree must be a positive integer"))?;
            if d == 0 {
                return Err(perr(path, lineno, "degree must be positive"));
            }
            degree = Some(d);
        } else if let Some(rest) = line.strip_prefix("param") {
            if default_alpha.is_some() {
                return Err(perr(path, lineno, "duplicate param line"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "alpha" || toks[1] != "=" {
                return Err(perr(path, lineno, "expected `param alpha = <rational>`"));
            }
            let v = parse_rational(toks[2]).map_err(|e| perr(path, lineno, e.to_string()))?;
            default_alpha = Some(v);
        } else if let Some(rest) = line.strip_prefix("factor") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(perr(path, lineno, "expected `factor <numer|denom> <exponent>`"));
            }
            let role = match toks[0] {
                "numer" => FactorRole::Numerator,
                "denom" => FactorRole::Denominator,
                other => {
                    return Err(perr(path, lineno, format!("bad factor role {other:?}")));
                }
            };
            let exponent: usize = toks[1]
                .parse()
                .map_err(|_| perr(path, lineno, format!("bad exponent {:?}", toks[1])))?;
            if exponent == 0 {
                return Err(perr(path, lineno, "factor exponent must be positive"));
            }
            factors.push(FamilyFactor { role, exponent, monomials: Vec::new() });
        } else if let Some(rest) = line.strip_prefix("mono") {
            let factor = factors
                .last_mut()
                .ok_or_else(|| perr(path, lineno, "`mono` before any `factor` line"))?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(perr(path, lineno, "expected `mono <coeff> <alpha-exp> <x-exp>`"));
            }
            let c = parse_rational(toks[0]).map_err(|e| perr(path, lineno, e.to_string()))?;
            let aexp: u32 = toks[1]
                .parse()
                .map_err(|_| perr(path, lineno, format!("bad alpha exponent {:?}", toks[1])))?;
            let xexp: u32 = toks[2]
                .parse()
                .map_err(|_| perr(path, lineno, format!("bad X exponent {:?}", toks[2])))?;
            factor.monomials.push((c, aexp, xexp));
        } else {
            return Err(perr(
                path,
                lineno,
                &format!(
                    "expected `family`, `degree`, `param`, `factor`, or `mono` line, got {line:?}"
                ),
            ));
        }
    }
    let name = name.ok_or_else(|| perr(path, 1, "missing `family <name>` line"))?;
    let degree = degree.ok_or_else(|| perr(path, 1, "missing `degree <n>` line"))?;
    if factors.is_empty() {
        return Err(perr(path, 1, "family file lists no factors"));
    }
    for (i, f) in factors.iter().enumerate() {
        if f.monomials.is_empty() {
            return Err(perr(path, 1, format!("factor {} has no monomials", i + 1)));
        }
    }
    if !factors.iter().any(|f| f.role == FactorRole::Denominator) {
        return Err(perr(path, 1, "family needs at least one denom factor (use `factor denom 1` with `mono 1 0 0` for q = 1)"));
    }
    Ok(CoverFamily { name, degree, default_alpha, factors })
}

// ---------------------------------------------------------------------------
// Tuple reports
// ---------------------------------------------------------------------------

/// Format inner classes as a tuple report: a `#` header with counts, then
/// one tuple per line, entries in cycle notation separated by ` | `.
pub fn format_tuple_report(classes: &[InnerTupleClass], straight_count: u128) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# inner classes: {}  straight tuples: {straight_count}\n",
        classes.len()
    ));
    for c in classes {
        let entries: Vec<String> =
            c.canonical().entries().iter().map(|p| p.to_string()).collect();
        out.push_str(&entries.join(" | "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn group_file_round_trip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("s3.grp");
        let g1 = parse_cycles(3, "(1,2)").unwrap();
        let g2 = parse_cycles(3, "(1,2,3)").unwrap();
        write_group_file(&path, 3, &[g1.clone(), g2.clone()], "symmetric group S3").unwrap();
        let g = read_group_file(&path).unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(g.order().unwrap(), 6);
        assert_eq!(g.gens(), &[g1, g2]);
    }

    #[test]
    fn group_file_errors() {
        let dir = tempdir().unwrap();
        let p = dir.path().join("bad1.grp");
        fs::write(&p, "(1,2)\ndegree 3\n").unwrap();
        assert!(read_group_file(&p).is_err(), "generator before degree");
        let p = dir.path().join("bad2.grp");
        fs::write(&p, "degree 3\n").unwrap();
        assert!(read_group_file(&p).is_err(), "no generators");
        let p = dir.path().join("bad3.grp");
        fs::write(&p, "degree 3\n(1,4)\n").unwrap();
        assert!(read_group_file(&p).is_err(), "point out of range");
        let p = dir.path().join("bad4.grp");
        fs::write(&p, "degree 3\nhello\n").unwrap();
        assert!(read_group_file(&p).is_err(), "junk line");
    }

    #[test]
    fn type_file_resolves_classes() {
        let dir = tempdir().unwrap();
        let gpath = dir.path().join("s3.grp");
        fs::write(&gpath, "degree 3\n(1,2)\n(1,2,3)\n").unwrap();
        let tpath = dir.path().join("s3_type.rty");
        fs::write(
            &tpath,
            "# three branch points\ngroup s3.grp\nclass 2.1\nclass 2.1 size=3\nclass 3 order=3\n",
        )
        .unwrap();
        let ty = read_type_file(&tpath).unwrap();
        assert_eq!(ty.len(), 3);
        assert_eq!(ty.classes()[0].size, 3);
        assert_eq!(ty.classes()[2].order, 3);
        // Wrong size errors.
        let bad = dir.path().join("bad_type.rty");
        fs::write(&bad, "group s3.grp\nclass 2.1 size=4\nclass 2.1\nclass 3\n").unwrap();
        assert!(read_type_file(&bad).is_err());
        // Empty class list errors.
        let empty = dir.path().join("empty.rty");
        fs::write(&empty, "group s3.grp\n").unwrap();
        assert!(read_type_file(&empty).is_err());
    }

    #[test]
    fn word_file_parses() {
        let dir = tempdir().unwrap();
        let p = dir.path().join("words.cfg");
        fs::write(
            &p,
            "# inertia words\nword lambda0 Q2\nword lambda1 Q1^2\nword inf Q2^-1 Q1^-2\nword triv id\n",
        )
        .unwrap();
        let words = read_word_file(&p).unwrap();
        assert_eq!(words.len(), 4);
        assert_eq!(words[0].0, "lambda0");
        assert_eq!(words[0].1.to_string(), "Q2");
        assert_eq!(words[2].1.runs(), &[(2, -1), (1, -2)]);
        assert_eq!(words[3].1, BraidWord::identity());
        let bad = dir.path().join("badwords.cfg");
        fs::write(&bad, "word oops R5\n").unwrap();
        assert!(read_word_file(&bad).is_err());
    }
}
