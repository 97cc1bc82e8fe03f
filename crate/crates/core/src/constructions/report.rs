//! Sequence reports: a computed prefix of a sequence, its provenance, and the
//! certificates and verdicts attached to it, with a stable text form.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use super::ConstructionError;
use crate::groups::Code;

/// Finite semantics of an infinitary claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact,
    HoldsToDepth(usize),
    Violated,
}

impl Verdict {
    pub fn is_violated(self) -> bool {
        self == Verdict::Violated
    }

    pub fn is_exact(self) -> bool {
        self == Verdict::Exact
    }

    /// The weaker of two verdicts.
    #[must_use]
    pub fn meet(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Violated, _) | (_, Verdict::Violated) => Verdict::Violated,
            (Verdict::HoldsToDepth(a), Verdict::HoldsToDepth(b)) => Verdict::HoldsToDepth(a.min(b)),
            (Verdict::HoldsToDepth(d), Verdict::Exact) | (Verdict::Exact, Verdict::HoldsToDepth(d)) => {
                Verdict::HoldsToDepth(d)
            }
            (Verdict::Exact, Verdict::Exact) => Verdict::Exact,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Exact => f.write_str("exact"),
            Verdict::HoldsToDepth(d) => write!(f, "depth:{d}"),
            Verdict::Violated => f.write_str("violated"),
        }
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Verdict::Exact),
            "violated" => Ok(Verdict::Violated),
            _ => s
                .strip_prefix("depth:")
                .and_then(|d| d.parse().ok())
                .map(Verdict::HoldsToDepth)
                .ok_or_else(|| format!("unknown verdict {s:?}")),
        }
    }
}

/// One checked condition of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Certificate {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Certificate {
            name: name.into(),
            verdict,
            detail: detail.into(),
        }
    }
}

/// A finite list attached to a certificate, e.g. the exceptions `ξ ∖ H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    pub cert: String,
    pub key: String,
    pub codes: Vec<Code>,
}

/// Outcome of a topological check on a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyVerdict {
    pub property: String,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
}

impl TopologyVerdict {
    pub fn new(property: impl Into<String>, verdict: Verdict, witnesses: Vec<String>) -> Self {
        TopologyVerdict {
            property: property.into(),
            verdict,
            witnesses,
        }
    }
}

/// Where an element of the sequence came from: the stage and the pair `(g, h)`
/// with `g⁻¹h` equal to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub stage: usize,
    pub pair: (Code, Code),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub name: String,
    pub group: String,
    pub base: String,
    pub depth: usize,
    pub count: usize,
    /// Every element of the full sequence missing from `xi` lies in `U_tail`.
    pub tail: Option<usize>,
    pub xi: Vec<Code>,
    /// Parallel to `xi` when present; empty for sequences not built from pairs.
    pub provenance: Vec<Provenance>,
    pub certificates: Vec<Certificate>,
    pub listings: Vec<Listing>,
    pub verdicts: Vec<TopologyVerdict>,
}

impl SequenceReport {
    pub fn new(name: impl Into<String>, group: impl Into<String>, base: impl Into<String>) -> Self {
        SequenceReport {
            name: name.into(),
            group: group.into(),
            base: base.into(),
            depth: 0,
            count: 0,
            tail: None,
            xi: Vec::new(),
            provenance: Vec::new(),
            certificates: Vec::new(),
            listings: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn certificate(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, property: &str) -> Option<&TopologyVerdict> {
        self.verdicts.iter().find(|v| v.property == property)
    }

    pub fn listings_for<'a>(&'a self, cert: &'a str) -> impl Iterator<Item = &'a Listing> + 'a {
        self.listings.iter().filter(move |l| l.cert == cert)
    }

    /// Any certificate or verdict violated?
    pub fn has_violation(&self) -> bool {
        self.certificates.iter().any(|c| c.verdict.is_violated())
            || self.verdicts.iter().any(|v| v.verdict.is_violated())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "report={}", self.name);
        let _ = writeln!(w, "group={}", self.group);
        let _ = writeln!(w, "base={}", self.base);
        let _ = writeln!(w, "depth={}", self.depth);
        let _ = writeln!(w, "count={}", self.count);
        match self.tail {
            Some(t) => {
                let _ = writeln!(w, "tail={t}");
            }
            None => {
                let _ = writeln!(w, "tail=none");
            }
        }
        for (i, x) in self.xi.iter().enumerate() {
            let _ = writeln!(w, "xi[{i}]={x}");
        }
        for (i, p) in self.provenance.iter().enumerate() {
            let _ = writeln!(w, "prov[{i}]={}:{},{}", p.stage, p.pair.0, p.pair.1);
        }
        for c in &self.certificates {
            let _ = writeln!(w, "{}", join_nonempty(&["cert", &c.name, &c.verdict.to_string(), &c.detail]));
        }
        for l in &self.listings {
            let codes: Vec<String> = l.codes.iter().map(Code::to_string).collect();
            let _ = writeln!(w, "{}", join_nonempty(&["list", &l.cert, &format!("{}:", l.key), &codes.join(" ")]));
        }
        for v in &self.verdicts {
            let mut parts = vec!["verdict".to_string(), v.property.clone(), v.verdict.to_string()];
            parts.extend(v.witnesses.iter().cloned());
            let _ = writeln!(w, "{}", parts.join(" "));
        }
        out.push_str("end\n");
        out
    }

    /// Parse one block as written by [`SequenceReport::render`].
    pub fn parse(text: &str) -> Result<SequenceReport, ConstructionError> {
        let mut reports = parse_reports(text)?;
        match reports.len() {
            1 => Ok(reports.remove(0)),
            n => Err(ConstructionError::Parse {
                line: 0,
                message: format!("expected one report, found {n}"),
            }),
        }
    }
}

fn join_nonempty(parts: &[&str]) -> String {
    parts.iter().filter(|p| !p.is_empty()).copied().collect::<Vec<_>>().join(" ")
}

/// Render several reports into one file.
pub fn render_reports(reports: &[SequenceReport]) -> String {
    reports.iter().map(SequenceReport::render).collect()
}

/// Parse every block of a report file.
pub fn parse_reports(text: &str) -> Result<Vec<SequenceReport>, ConstructionError> {
    let mut out = Vec::new();
    let mut current: Option<SequenceReport> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let err = |message: String| ConstructionError::Parse { line: lineno, message };
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("report=") {
            if current.is_some() {
                return Err(err("report started before previous `end`".into()));
            }
            current = Some(SequenceReport::new(name, "", ""));
            continue;
        }
        let report = current.as_mut().ok_or_else(|| err("line outside a report block".into()))?;
        if line == "end" {
            out.push(current.take().expect("checked above"));
            continue;
        }
        let parse_usize = |v: &str| v.parse::<usize>().map_err(|e| err(format!("{v:?}: {e}")));
        let parse_code = |v: &str| v.parse::<u128>().map(Code).map_err(|e| err(format!("{v:?}: {e}")));
        if let Some(v) = line.strip_prefix("group=") {
            report.group = v.to_string();
        } else if let Some(v) = line.strip_prefix("base=") {
            report.base = v.to_string();
        } else if let Some(v) = line.strip_prefix("depth=") {
            report.depth = parse_usize(v)?;
        } else if let Some(v) = line.strip_prefix("count=") {
            report.count = parse_usize(v)?;
        } else if let Some(v) = line.strip_prefix("tail=") {
            report.tail = if v == "none" { None } else { Some(parse_usize(v)?) };
        } else if let Some(rest) = line.strip_prefix("xi[") {
            let (idx, value) = rest.split_once("]=").ok_or_else(|| err("malformed xi line".into()))?;
            if parse_usize(idx)? != report.xi.len() {
                return Err(err("xi indices out of order".into()));
            }
            report.xi.push(parse_code(value)?);
        } else if let Some(rest) = line.strip_prefix("prov[") {
            let (idx, value) = rest.split_once("]=").ok_or_else(|| err("malformed prov line".into()))?;
            if parse_usize(idx)? != report.provenance.len() {
                return Err(err("prov indices out of order".into()));
            }
            let (stage, pair) = value.split_once(':').ok_or_else(|| err("malformed provenance".into()))?;
            let (g, h) = pair.split_once(',').ok_or_else(|| err("malformed pair".into()))?;
            report.provenance.push(Provenance {
                stage: parse_usize(stage)?,
                pair: (parse_code(g)?, parse_code(h)?),
            });
        } else if let Some(rest) = line.strip_prefix("cert ") {
            let mut parts = rest.splitn(3, ' ');
            let name = parts.next().unwrap_or_default();
            let verdict = parts.next().unwrap_or_default().parse().map_err(err)?;
            let detail = parts.next().unwrap_or_default();
            report.certificates.push(Certificate::new(name, verdict, detail));
        } else if let Some(rest) = line.strip_prefix("list ") {
            let (cert, rest) = rest.split_once(' ').ok_or_else(|| err("malformed list line".into()))?;
            let (key, codes) = rest.split_once(':').ok_or_else(|| err("malformed list key".into()))?;
            let codes = codes.split_whitespace().map(parse_code).collect::<Result<_, _>>()?;
            report.listings.push(Listing {
                cert: cert.to_string(),
                key: key.to_string(),
                codes,
            });
        } else if let Some(rest) = line.strip_prefix("verdict ") {
            let mut parts = rest.split(' ');
            let property = parts.next().unwrap_or_default().to_string();
            let verdict = parts.next().unwrap_or_default().parse().map_err(err)?;
            let witnesses = parts.map(str::to_string).collect();
            report.verdicts.push(TopologyVerdict {
                property,
                verdict,
                witnesses,
            });
        } else {
            return Err(err(format!("unrecognised line {line:?}")));
        }
    }
    if current.is_some() {
        return Err(ConstructionError::Parse {
            line: text.lines().count(),
            message: "missing `end`".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SequenceReport {
        let mut r = SequenceReport::new("s21", "boolean-omega", "boolean-omega");
        r.depth = 512;
        r.count = 2;
        r.tail = Some(2);
        r.xi = vec![Code(3), Code(2)];
        r.provenance = vec![
            Provenance {
                stage: 0,
                pair: (Code(1), Code(2)),
            },
            Provenance {
                stage: 1,
                pair: (Code(4), Code(6)),
            },
        ];
        r.certificates.push(Certificate::new("s21.ii", Verdict::Exact, "k=0:1,2 k=1:4,6"));
        r.certificates.push(Certificate::new("s21.iii", Verdict::HoldsToDepth(512), ""));
        r.listings.push(Listing {
            cert: "s21.iv".into(),
            key: "n=1".into(),
            codes: vec![Code(3)],
        });
        r.listings.push(Listing {
            cert: "s21.iv".into(),
            key: "n=0".into(),
            codes: vec![],
        });
        r.verdicts.push(TopologyVerdict::new("discrete", Verdict::Violated, vec!["x=3".into()]));
        r
    }

    #[test]
    fn round_trip() {
        let r = sample();
        let text = r.render();
        assert!(text.starts_with("report=s21\ngroup=boolean-omega\n"));
        assert!(text.contains("\nxi[1]=2\n"));
        assert!(text.contains("\ncert s21.iii depth:512\n"));
        assert!(text.contains("\nlist s21.iv n=0:\n"));
        assert_eq!(SequenceReport::parse(&text).unwrap(), r);
    }

    #[test]
    fn multiple_blocks() {
        let mut other = sample();
        other.name = "other".into();
        other.tail = None;
        let text = render_reports(&[sample(), other.clone()]);
        assert_eq!(parse_reports(&text).unwrap(), vec![sample(), other]);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(
            parse_reports("report=a\nxi[1]=3\nend\n"),
            Err(ConstructionError::Parse { line: 2, .. })
        ));
        assert!(parse_reports("report=a\n").is_err());
        assert!(parse_reports("xi[0]=1\n").is_err());
    }

    #[test]
    fn verdict_meet() {
        assert_eq!(Verdict::Exact.meet(Verdict::HoldsToDepth(5)), Verdict::HoldsToDepth(5));
        assert_eq!(Verdict::HoldsToDepth(3).meet(Verdict::Violated), Verdict::Violated);
        assert_eq!("depth:12".parse(), Ok(Verdict::HoldsToDepth(12)));
    }
}
