//! Hecke-eigenvalue data plumbing: CSV ingestion of a_p series, empirical
//! agreement statistics against catalog predictions, partial Dirichlet
//! quotients, and a deterministic synthetic generator that samples a finite
//! model by class frequencies.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::catalog::PairModel;
use crate::error::{Error, Result};
use crate::exactnum::Rat;

/// One a_p value: exact rational or complex decimal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ApValue {
    Exact(Rat),
    Decimal(f64, f64),
}

impl ApValue {
    pub fn approx(&self) -> (f64, f64) {
        match *self {
            ApValue::Exact(r) => (*r.numer() as f64 / *r.denom() as f64, 0.0),
            ApValue::Decimal(re, im) => (re, im),
        }
    }

    /// |a − b| ≤ tol, exact when both are rational and tol = 0.
    pub fn agrees(&self, other: &ApValue, tol: f64) -> bool {
        if tol == 0.0 {
            if let (ApValue::Exact(a), ApValue::Exact(b)) = (self, other) {
                return a == b;
            }
        }
        let (ar, ai) = self.approx();
        let (br, bi) = other.approx();
        ((ar - br).powi(2) + (ai - bi).powi(2)).sqrt() <= tol
    }
}

/// A sorted series of (prime, a_p) with an excluded (ramified) prime set.
#[derive(Clone, Debug)]
pub struct APSeries {
    pub label: String,
    pub entries: Vec<(u64, ApValue)>,
    pub excluded: Vec<u64>,
}

impl APSeries {
    pub fn get(&self, p: u64) -> Option<&ApValue> {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn is_excluded(&self, p: u64) -> bool {
        self.excluded.contains(&p)
    }
}

/// Primes up to and including `n` (simple sieve).
pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// CSV value encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsvFormat {
    /// rows `p,re,im`
    Decimal,
    /// rows `p,num,den`
    Rational,
}

/// Parse an a_p CSV file.
///
/// Layout: a `#format:decimal` or `#format:rational` header, optional
/// `#label:` and `#exclude:p1,p2,...` headers, other `#` lines ignored, then
/// rows `p,x,y`. Duplicate or composite primes are rejected with the
/// offending line number.
pub fn load_ap_csv(path: impl AsRef<Path>) -> Result<APSeries> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_ap_csv(&text, &path.as_ref().display().to_string())
}

pub fn parse_ap_csv(text: &str, default_label: &str) -> Result<APSeries> {
    let mut format: Option<CsvFormat> = None;
    let mut label = default_label.to_string();
    let mut excluded: Vec<u64> = Vec::new();
    let mut entries: Vec<(u64, ApValue)> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(f) = rest.strip_prefix("format:") {
                format = Some(match f.trim() {
                    "decimal" => CsvFormat::Decimal,
                    "rational" => CsvFormat::Rational,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("unknown format `{other}`"),
                        })
                    }
                });
            } else if let Some(l) = rest.strip_prefix("label:") {
                label = l.trim().to_string();
            } else if let Some(ex) = rest.strip_prefix("exclude:") {
                for tok in ex.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let p: u64 = tok.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad excluded prime `{tok}`"),
                    })?;
                    excluded.push(p);
                }
            }
            continue;
        }
        let fmt = format.ok_or(Error::Parse {
            line: lineno,
            msg: "data before #format header".into(),
        })?;
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse { line: lineno, msg: "expected `p,x,y`".into() });
        }
        let p: u64 = parts[0].parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("bad prime `{}`", parts[0]),
        })?;
        let value = match fmt {
            CsvFormat::Decimal => {
                let re: f64 = parts[1].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad decimal `{}`", parts[1]),
                })?;
                let im: f64 = parts[2].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad decimal `{}`", parts[2]),
                })?;
                ApValue::Decimal(re, im)
            }
            CsvFormat::Rational => {
                let num: i64 = parts[1].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad numerator `{}`", parts[1]),
                })?;
                let den: i64 = parts[2].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad denominator `{}`", parts[2]),
                })?;
                if den == 0 {
                    return Err(Error::InvalidData(format!("line {lineno}: zero denominator")));
                }
                ApValue::Exact(Rat::new(num, den))
            }
        };
        lines.push(lineno);
        entries.push((p, value));
    }
    // Primality check via one sieve; trial division for very large primes.
    let maxp = entries.iter().map(|&(p, _)| p).max().unwrap_or(0);
    let sieve: Option<Vec<u64>> = (maxp <= 10_000_000).then(|| primes_upto(maxp));
    for (&(p, _), &lineno) in entries.iter().zip(&lines) {
        let prime = match &sieve {
            Some(ps) => ps.binary_search(&p).is_ok(),
            None => is_prime(p),
        };
        if !prime {
            return Err(Error::InvalidData(format!("line {lineno}: {p} is not prime")));
        }
    }
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by_key(|&i| entries[i].0);
    for w in order.windows(2) {
        if entries[w[0]].0 == entries[w[1]].0 {
            let lineno = lines[w[0]].max(lines[w[1]]);
            return Err(Error::InvalidData(format!(
                "line {lineno}: duplicate prime {}",
                entries[w[0]].0
            )));
        }
    }
    let entries: Vec<(u64, ApValue)> = order.into_iter().map(|i| entries[i]).collect();
    excluded.sort_unstable();
    excluded.dedup();
    if let Some(&(p, _)) = entries.iter().find(|&&(p, _)| excluded.contains(&p)) {
        return Err(Error::InvalidData(format!(
            "prime {p} appears both in the data and the excluded set"
        )));
    }
    Ok(APSeries { label, entries, excluded })
}

/// Serialize a series in the CSV format accepted by `load_ap_csv`.
pub fn ap_csv_string(series: &APSeries, format: CsvFormat) -> Result<String> {
    let mut out = String::new();
    let fmt_name = match format {
        CsvFormat::Decimal => "decimal",
        CsvFormat::Rational => "rational",
    };
    writeln!(out, "#format:{fmt_name}").unwrap();
    writeln!(out, "#label:{}", series.label).unwrap();
    if !series.excluded.is_empty() {
        let list: Vec<String> = series.excluded.iter().map(u64::to_string).collect();
        writeln!(out, "#exclude:{}", list.join(",")).unwrap();
    }
    for &(p, v) in &series.entries {
        match (format, v) {
            (CsvFormat::Rational, ApValue::Exact(r)) => {
                writeln!(out, "{p},{},{}", r.numer(), r.denom()).unwrap();
            }
            (CsvFormat::Rational, ApValue::Decimal(..)) => {
                return Err(Error::InvalidData(
                    "cannot export a decimal value in rational format".into(),
                ));
            }
            (CsvFormat::Decimal, v) => {
                let (re, im) = v.approx();
                writeln!(out, "{p},{re:.12},{im:.12}").unwrap();
            }
        }
    }
    Ok(out)
}

pub fn write_ap_csv(path: impl AsRef<Path>, series: &APSeries, format: CsvFormat) -> Result<()> {
    std::fs::write(path, ap_csv_string(series, format)?)?;
    Ok(())
}

/// Empirical agreement statistics for two series up to a cutoff.
#[derive(Clone, Debug)]
pub struct EmpiricalReport {
    pub x: u64,
    pub agree_count: u64,
    pub disagree_count: u64,
    /// Primes ≤ X present in at least one series but not compared (missing
    /// from the other, or excluded in either).
    pub skipped: u64,
    pub natural_density_estimate: f64,
}

impl EmpiricalReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "X": self.x,
            "agree": self.agree_count,
            "disagree": self.disagree_count,
            "skipped": self.skipped,
            "natural_density_estimate": self.natural_density_estimate,
        })
    }
}

fn comparable_primes<'a>(
    a: &'a APSeries,
    b: &APSeries,
    x: u64,
) -> Vec<(u64, &'a ApValue, ApValue)> {
    a.entries
        .iter()
        .filter(|&&(p, _)| p <= x && !a.is_excluded(p) && !b.is_excluded(p))
        .filter_map(|&(p, ref va)| b.get(p).map(|vb| (p, va, *vb)))
        .collect()
}

/// Counts of agreeing/disagreeing primes ≤ X present in both series and
/// excluded in neither.
pub fn empirical_agreement(
    a: &APSeries,
    b: &APSeries,
    x: u64,
    tol: f64,
) -> Result<EmpiricalReport> {
    if x < 2 {
        return Err(Error::InvalidArgument("cutoff X must be at least 2".into()));
    }
    if tol < 0.0 {
        return Err(Error::InvalidArgument("tolerance must be nonnegative".into()));
    }
    let common = comparable_primes(a, b, x);
    if common.is_empty() {
        return Err(Error::NoData);
    }
    let mut agree = 0u64;
    for (_, va, vb) in &common {
        if va.agrees(vb, tol) {
            agree += 1;
        }
    }
    let disagree = common.len() as u64 - agree;
    let mut considered: Vec<u64> = a
        .entries
        .iter()
        .chain(b.entries.iter())
        .map(|&(p, _)| p)
        .filter(|&p| p <= x)
        .collect();
    considered.sort_unstable();
    considered.dedup();
    let skipped = considered.len() as u64 - common.len() as u64;
    Ok(EmpiricalReport {
        x,
        agree_count: agree,
        disagree_count: disagree,
        skipped,
        natural_density_estimate: agree as f64 / (agree + disagree) as f64,
    })
}

/// Partial Dirichlet quotient at s, together with the raw value whose
/// denominator is the full −log(s−1).
#[derive(Clone, Debug)]
pub struct DirichletReport {
    pub s: f64,
    /// Truncation-consistent estimator: Σ_{p ∈ S, p ≤ data} p^{−s} divided
    /// by Σ over all compared primes p^{−s}. Converges to the density as the
    /// data coverage grows.
    pub quotient: f64,
    /// Σ_{p ∈ S} p^{−s} / −log(s−1) over the loaded data only; biased low
    /// whenever the data stop short of where p^{−s} keeps accumulating mass.
    pub raw_quotient: f64,
    pub disagree_sum: f64,
    pub total_sum: f64,
    pub caveat: &'static str,
}

pub fn dirichlet_report(
    a: &APSeries,
    b: &APSeries,
    s: f64,
    tol: f64,
) -> Result<DirichletReport> {
    if s <= 1.0 {
        return Err(Error::InvalidArgument("s must exceed 1".into()));
    }
    let common = comparable_primes(a, b, u64::MAX);
    if common.is_empty() {
        return Err(Error::NoData);
    }
    let mut disagree_sum = 0.0;
    let mut total_sum = 0.0;
    for (p, va, vb) in &common {
        let w = (*p as f64).powf(-s);
        total_sum += w;
        if !va.agrees(vb, tol) {
            disagree_sum += w;
        }
    }
    Ok(DirichletReport {
        s,
        quotient: disagree_sum / total_sum,
        raw_quotient: disagree_sum / (-(s - 1.0).ln()),
        disagree_sum,
        total_sum,
        caveat: "partial sums over loaded data only; the raw quotient \
                 understates the density when the data are truncated",
    })
}

/// The truncation-consistent Dirichlet quotient (see `DirichletReport`).
pub fn dirichlet_quotient(a: &APSeries, b: &APSeries, s: f64, tol: f64) -> Result<f64> {
    Ok(dirichlet_report(a, b, s, tol)?.quotient)
}

/// Deterministically sample a catalog pair model: primes ≤ x are assigned to
/// conjugacy classes in balanced blocks of |G| primes, each block containing
/// every class exactly as often as its size, with the order inside a block
/// shuffled by the seeded generator. Every block therefore matches the exact
/// class frequencies. Primes dividing the group order play the ramified set
/// and are excluded.
pub fn synthesize(
    pair: &PairModel,
    x: u64,
    seed: u64,
    label: &str,
) -> Result<(APSeries, APSeries)> {
    let g = &pair.group;
    let order = g.order() as u64;
    let excluded: Vec<u64> = primes_upto(order).into_iter().filter(|p| order % p == 0).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let block_template: Vec<usize> = g
        .classes()
        .iter()
        .enumerate()
        .flat_map(|(c, cl)| std::iter::repeat(c).take(cl.len()))
        .collect();
    let mut block: Vec<usize> = Vec::new();
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for p in primes_upto(x) {
        if excluded.contains(&p) {
            continue;
        }
        if block.is_empty() {
            block = block_template.clone();
            // Fisher-Yates shuffle; drawing from the back below.
            for i in (1..block.len()).rev() {
                block.swap(i, rng.gen_range(0..=i));
            }
        }
        let c = block.pop().expect("block refilled when empty");
        for (chi, out) in [(&pair.chi1, &mut e1), (&pair.chi2, &mut e2)] {
            let v = chi.value(c);
            let value = match v.as_rat() {
                Some(r) => ApValue::Exact(r),
                None => {
                    let (re, im) = v.approx();
                    ApValue::Decimal(re, im)
                }
            };
            out.push((p, value));
        }
    }
    let mk = |suffix: &str, entries: Vec<(u64, ApValue)>| APSeries {
        label: format!("{label}-{suffix}"),
        entries,
        excluded: excluded.clone(),
    };
    Ok((mk("chi1", e1), mk("chi2", e2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::example;
    use crate::exactnum::rat;

    #[test]
    fn sieve_basics() {
        assert_eq!(primes_upto(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_upto(1), Vec::<u64>::new());
        assert_eq!(primes_upto(1000).len(), 168);
    }

    #[test]
    fn csv_roundtrip() {
        let series = APSeries {
            label: "t".into(),
            entries: vec![
                (2, ApValue::Exact(rat(1, 1))),
                (3, ApValue::Exact(rat(-1, 1))),
            ],
            excluded: vec![5],
        };
        let text = ap_csv_string(&series, CsvFormat::Rational).unwrap();
        let back = parse_ap_csv(&text, "x").unwrap();
        assert_eq!(back.label, "t");
        assert_eq!(back.entries, series.entries);
        assert_eq!(back.excluded, vec![5]);
    }

    #[test]
    fn csv_rejects_bad_input() {
        let dup = "#format:decimal\n5,1.0,0.0\n5,2.0,0.0\n";
        assert!(matches!(parse_ap_csv(dup, "x"), Err(Error::InvalidData(_))));
        let composite = "#format:decimal\n4,1.0,0.0\n";
        assert!(matches!(parse_ap_csv(composite, "x"), Err(Error::InvalidData(_))));
        let headerless = "2,1.0,0.0\n";
        assert!(matches!(parse_ap_csv(headerless, "x"), Err(Error::Parse { line: 1, .. })));
        let overlap = "#format:decimal\n#exclude:7\n7,1.0,0.0\n";
        assert!(matches!(parse_ap_csv(overlap, "x"), Err(Error::InvalidData(_))));
    }

    #[test]
    fn identical_series_agree_fully() {
        let s = parse_ap_csv("#format:decimal\n2,1.0,0.0\n3,-1.0,0.0\n", "x").unwrap();
        let rep = empirical_agreement(&s, &s, 10, 0.0).unwrap();
        assert_eq!(rep.agree_count, 2);
        assert_eq!(rep.disagree_count, 0);
        assert_eq!(rep.natural_density_estimate, 1.0);
    }

    #[test]
    fn disjoint_supports_no_data() {
        let a = parse_ap_csv("#format:decimal\n2,1.0,0.0\n", "a").unwrap();
        let b = parse_ap_csv("#format:decimal\n3,1.0,0.0\n", "b").unwrap();
        assert!(matches!(empirical_agreement(&a, &b, 10, 0.0), Err(Error::NoData)));
    }

    #[test]
    fn dirichlet_preconditions() {
        let s = parse_ap_csv("#format:decimal\n2,1.0,0.0\n", "x").unwrap();
        assert!(matches!(
            dirichlet_quotient(&s, &s, 1.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        // Empty disagreement set gives quotient 0.
        assert_eq!(dirichlet_quotient(&s, &s, 1.01, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn synthetic_octahedral_converges() {
        let pair = example("octahedral").unwrap();
        let model = pair.model.unwrap();
        let (a, b) = synthesize(&model, 100_000, 7, "oct").unwrap();
        let rep = empirical_agreement(&a, &b, 100_000, 1e-9).unwrap();
        assert!((rep.natural_density_estimate - 0.75).abs() < 0.02, "{rep:?}");
        let q = dirichlet_quotient(&a, &b, 1.01, 1e-9).unwrap();
        assert!((q - 0.25).abs() < 0.05, "quotient {q}");
        // Deterministic for a fixed seed.
        let (a2, _) = synthesize(&model, 100_000, 7, "oct").unwrap();
        assert_eq!(a.entries, a2.entries);
    }

    #[test]
    fn synthetic_rational_pair_roundtrips_exactly() {
        let pair = example("s3-pair").unwrap();
        let model = pair.model.unwrap();
        let (a, b) = synthesize(&model, 10_000, 42, "s3").unwrap();
        let text_a = ap_csv_string(&a, CsvFormat::Rational).unwrap();
        let back = parse_ap_csv(&text_a, "s3").unwrap();
        assert_eq!(back.entries, a.entries);
        let rep = empirical_agreement(&a, &b, 10_000, 0.0).unwrap();
        let expect = 7.0 / 9.0;
        assert!((rep.natural_density_estimate - expect).abs() < 0.03, "{rep:?}");
    }
}
