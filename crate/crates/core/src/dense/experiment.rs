//! Seeded transition experiments on `G(n, 1 - c/n)` and `G(n, C(n,2) - ceil(cn/2))`.

use std::fmt;
use std::io::{Read, Write};

use num_rational::Ratio;
use num_traits::Signed;
use rayon::prelude::*;

use super::peel::two_core;
use super::sampling::{sample_gnm, sample_gnp, RngSeed};
use super::split::{balanced_bipartition_sparse, Rho};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::modularity::near_complete_bound_from_counts;
use crate::{Rational, Score};

pub const CSV_HEADER: &str = "n,c,mode,seed,complement_edges,core_excess,core_components,rho,edges_removed,\
cut_edges,certified_num,certified_den,upper_num,upper_den,missing_edges,zero_certified";

/// Random model for the dense graph `G`; its complement `H` is what gets sampled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// `G(n,p)` with `p = 1 - c/n`, so `H ~ G(n, c/n)`.
    Gnp { c: f64 },
    /// `G(n,m)` with `m = C(n,2) - ceil(cn/2)`.
    Gnm { c: f64 },
}

impl Model {
    pub fn c(&self) -> f64 {
        match *self {
            Model::Gnp { c } | Model::Gnm { c } => c,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Gnp { .. } => "gnp",
            Model::Gnm { .. } => "gnm",
        }
    }

    pub fn from_name(name: &str, c: f64) -> Result<Self> {
        match name {
            "gnp" => Ok(Model::Gnp { c }),
            "gnm" => Ok(Model::Gnm { c }),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}, expected gnp or gnm"))),
        }
    }

    /// Missing-edge count for `Gnm`: `ceil(cn/2)`.
    pub fn gnm_missing(n: usize, c: f64) -> usize {
        (c * n as f64 / 2.0).ceil() as usize
    }

    fn sample_complement(&self, n: usize, seed: RngSeed) -> Result<Graph> {
        if !(self.c() >= 0.0 && self.c() <= n as f64) {
            return Err(Error::InvalidParameter(format!("c = {} outside [0, n]", self.c())));
        }
        match *self {
            Model::Gnp { c } => sample_gnp(n, c / n as f64, seed),
            Model::Gnm { c } => sample_gnm(n, Self::gnm_missing(n, c), seed),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(c={})", self.name(), self.c())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionConfig {
    pub n: usize,
    pub model: Model,
    pub seeds: Vec<u64>,
    /// Defaults to [`Rho::default_for`].
    pub rho: Option<Rho>,
}

impl TransitionConfig {
    pub fn rho(&self) -> Rho {
        self.rho.unwrap_or_else(|| Rho::default_for(self.n))
    }
}

/// Quantities behind the split guarantees, kept for auditing. Not part of the CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitAudit {
    pub forest_removed: usize,
    pub split_removed: usize,
    /// Maximum degree of the spanning forest that was split.
    pub forest_max_degree: usize,
    pub largest_component: usize,
    pub imbalance: usize,
    pub sacrificed: usize,
    /// Maximum degree of the complement.
    pub max_degree: usize,
}

/// One sample. `certified_score` is `None` when the complement has too few
/// isolated vertices for the balanced-bipartition construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionRecord {
    pub n: usize,
    pub c: f64,
    pub mode: String,
    pub seed: u64,
    pub complement_edges: usize,
    pub core_excess: i64,
    pub core_components: usize,
    pub rho: Rho,
    pub edges_removed: usize,
    /// Complement edges crossing the bipartition.
    pub cut_edges: usize,
    pub certified_score: Option<Rational>,
    pub upper_bound: Rational,
    pub missing_edges: usize,
    /// At most `n/2` missing edges, so the dense graph has modularity exactly 0.
    pub zero_certified: bool,
    /// Present for records produced in-process, absent after a CSV round trip.
    pub audit: Option<SplitAudit>,
}

impl TransitionRecord {
    pub fn is_flagged(&self) -> bool {
        self.certified_score.is_none()
    }

    pub fn certified_positive(&self) -> bool {
        self.certified_score.is_some_and(|s| s.is_positive())
    }
}

/// Score of `bip` on the complement of `complement`, using only the
/// complement's degrees and edges: `e_G(A) = C(|A|,2) - e_H(A)` and
/// `vol_G(A) = |A|(n-1) - vol_H(A)`.
pub fn dense_bipartition_score(complement: &Graph, bip: &Bipartition) -> Result<Score> {
    bip.check_host(complement.n())?;
    let n = complement.n() as i128;
    let pairs = |k: i128| k * (k - 1) / 2;
    let m_dense = pairs(n) - complement.m() as i128;
    let in_a = bip.part_a();
    let mut internal_h = [0i128; 2];
    for &(u, v) in complement.edges() {
        let (a, b) = (in_a.contains(u), in_a.contains(v));
        if a == b {
            internal_h[usize::from(!a)] += 1;
        }
    }
    let mut vol_h = [0i128; 2];
    for v in 0..complement.n() {
        vol_h[usize::from(!in_a.contains(v))] += complement.degree(v) as i128;
    }
    let size_a = in_a.len() as i128;
    let sizes = [size_a, n - size_a];
    let mut internal = 0i128;
    let mut sum_vol_sq = 0i128;
    for side in 0..2 {
        if sizes[side] == 0 {
            continue;
        }
        internal += pairs(sizes[side]) - internal_h[side];
        let vol = sizes[side] * (n - 1) - vol_h[side];
        sum_vol_sq = vol.checked_mul(vol).and_then(|s| s.checked_add(sum_vol_sq)).ok_or(Error::Overflow)?;
    }
    Score::from_counts(m_dense, internal, sum_vol_sq)
}

fn run_one(n: usize, model: Model, rho: Rho, seed: u64) -> Result<TransitionRecord> {
    let h = model.sample_complement(n, RngSeed::new(seed))?;
    let core = two_core(&h);
    let missing = h.m();
    let dense_m = n * n.saturating_sub(1) / 2 - missing;
    // an edgeless graph has modularity 0 by convention
    let upper_bound =
        if dense_m == 0 { Rational::from_integer(0) } else { near_complete_bound_from_counts::<i128>(n, dense_m)? };
    let mut record = TransitionRecord {
        n,
        c: model.c(),
        mode: model.name().to_string(),
        seed,
        complement_edges: missing,
        core_excess: core.excess,
        core_components: core.components,
        rho,
        edges_removed: 0,
        cut_edges: 0,
        certified_score: None,
        upper_bound,
        missing_edges: missing,
        zero_certified: 2 * missing <= n,
        audit: None,
    };
    match balanced_bipartition_sparse(&h, rho) {
        Ok(sb) => {
            let score = dense_bipartition_score(&h, &sb.bipartition)?;
            record.edges_removed = sb.edges_removed();
            record.cut_edges = sb.cut_edges;
            record.certified_score = Some(score.score);
            record.audit = Some(SplitAudit {
                forest_removed: sb.forest_removed,
                split_removed: sb.split.removed.len(),
                forest_max_degree: sb.split.params.max_degree_observed,
                largest_component: sb.split.largest_component,
                imbalance: sb.imbalance(),
                sacrificed: sb.sacrificed,
                max_degree: sb.max_degree,
            });
        }
        Err(Error::HypothesisUnmet { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(record)
}

/// One record per seed, in seed-list order. Seeds run in parallel; each run
/// is a pure function of its seed.
pub fn transition_experiment(config: &TransitionConfig) -> Result<Vec<TransitionRecord>> {
    if config.n < 2 {
        return Err(Error::InvalidParameter("transition experiments need n >= 2".into()));
    }
    if config.seeds.is_empty() {
        return Err(Error::InvalidParameter("no seeds given".into()));
    }
    let rho = config.rho();
    config.seeds.par_iter().map(|&seed| run_one(config.n, config.model, rho, seed)).collect()
}

fn ratio_columns(r: Option<&Rational>) -> [String; 2] {
    match r {
        Some(r) => [r.numer().to_string(), r.denom().to_string()],
        None => ["0".into(), "0".into()],
    }
}

pub fn write_csv<W: Write>(records: &[TransitionRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        let [cn, cd] = ratio_columns(r.certified_score.as_ref());
        let [un, ud] = ratio_columns(Some(&r.upper_bound));
        w.write_record([
            r.n.to_string(),
            r.c.to_string(),
            r.mode.clone(),
            r.seed.to_string(),
            r.complement_edges.to_string(),
            r.core_excess.to_string(),
            r.core_components.to_string(),
            r.rho.to_string(),
            r.edges_removed.to_string(),
            r.cut_edges.to_string(),
            cn,
            cd,
            un,
            ud,
            r.missing_edges.to_string(),
            u8::from(r.zero_certified).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize, line: u64) -> Result<T> {
    let text = row.get(i).unwrap_or("");
    text.trim()
        .parse()
        .map_err(|_| Error::Schema(format!("row {line}: column {} has bad value {text:?}", column_name(i))))
}

fn column_name(i: usize) -> &'static str {
    CSV_HEADER.split(',').nth(i).unwrap_or("?")
}

/// Parses a CSV written by [`write_csv`]. The header must match exactly.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<TransitionRecord>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Schema(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for (i, row) in r.records().enumerate() {
        let row = row?;
        let line = i as u64 + 2;
        let ratio = |a: usize, b: usize| -> Result<Option<Rational>> {
            let (num, den): (i128, i128) = (field(&row, a, line)?, field(&row, b, line)?);
            Ok((den != 0).then(|| Ratio::new(num, den)))
        };
        let rho: Rho = row
            .get(7)
            .unwrap_or("")
            .parse()
            .map_err(|_| Error::Schema(format!("row {line}: bad rho")))?;
        let zero: u8 = field(&row, 15, line)?;
        if zero > 1 {
            return Err(Error::Schema(format!("row {line}: zero_certified must be 0 or 1")));
        }
        out.push(TransitionRecord {
            n: field(&row, 0, line)?,
            c: field(&row, 1, line)?,
            mode: Model::from_name(row.get(2).unwrap_or(""), 0.0)
                .map_err(|e| Error::Schema(format!("row {line}: {e}")))?
                .name()
                .to_string(),
            seed: field(&row, 3, line)?,
            complement_edges: field(&row, 4, line)?,
            core_excess: field(&row, 5, line)?,
            core_components: field(&row, 6, line)?,
            rho,
            edges_removed: field(&row, 8, line)?,
            cut_edges: field(&row, 9, line)?,
            certified_score: ratio(10, 11)?,
            upper_bound: ratio(12, 13)?
                .ok_or_else(|| Error::Schema(format!("row {line}: upper bound has zero denominator")))?,
            missing_edges: field(&row, 14, line)?,
            zero_certified: zero == 1,
            audit: None,
        });
    }
    Ok(out)
}

/// Minimum, median and maximum of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spread {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl Spread {
    fn of(mut xs: Vec<f64>) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        xs.sort_by(f64::total_cmp);
        let k = xs.len();
        let median = if k % 2 == 1 { xs[k / 2] } else { (xs[k / 2 - 1] + xs[k / 2]) / 2.0 };
        Some(Spread { min: xs[0], median, max: xs[k - 1] })
    }
}

impl fmt::Display for Spread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}/{:.4}/{:.4}", self.min, self.median, self.max)
    }
}

/// Aggregates for one `(n, c, mode)` group. Flagged records are excluded
/// from the certified fraction and the score spread.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSummary {
    pub n: usize,
    pub c: f64,
    pub mode: String,
    pub rows: usize,
    pub flagged: usize,
    pub certified_positive_fraction: f64,
    pub zero_fraction: f64,
    /// `n * certified_score`.
    pub n_score: Option<Spread>,
    /// `n * upper_bound`.
    pub n_upper: Spread,
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} c={} mode={} rows={} flagged={}: certified-positive fraction {:.2}, zero fraction {:.2}, ",
            self.n, self.c, self.mode, self.rows, self.flagged, self.certified_positive_fraction, self.zero_fraction
        )?;
        match &self.n_score {
            Some(s) => write!(f, "n*score min/median/max {s}, ")?,
            None => f.write_str("n*score min/median/max n/a, ")?,
        }
        write!(f, "n*upper min/median/max {}", self.n_upper)
    }
}

fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Groups records by `(n, c, mode)` in order of first appearance.
pub fn summarize(records: &[TransitionRecord]) -> Result<Vec<GroupSummary>> {
    if records.is_empty() {
        return Err(Error::Schema("no rows to summarize".into()));
    }
    let mut groups: Vec<(usize, f64, &str, Vec<&TransitionRecord>)> = Vec::new();
    for r in records {
        match groups.iter_mut().find(|g| g.0 == r.n && g.1 == r.c && g.2 == r.mode) {
            Some(g) => g.3.push(r),
            None => groups.push((r.n, r.c, &r.mode, vec![r])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(n, c, mode, rs)| {
            let rows = rs.len();
            let scored: Vec<&Rational> = rs.iter().filter_map(|r| r.certified_score.as_ref()).collect();
            let flagged = rows - scored.len();
            let positive = scored.iter().filter(|s| s.is_positive()).count();
            let zero = rs.iter().filter(|r| r.zero_certified).count();
            let nf = n as f64;
            GroupSummary {
                n,
                c,
                mode: mode.to_string(),
                rows,
                flagged,
                certified_positive_fraction: if scored.is_empty() { 0.0 } else { positive as f64 / scored.len() as f64 },
                zero_fraction: zero as f64 / rows as f64,
                n_score: Spread::of(scored.iter().map(|s| nf * to_f64(s)).collect()),
                n_upper: Spread::of(rs.iter().map(|r| nf * to_f64(&r.upper_bound)).collect())
                    .expect("groups are nonempty"),
            }
        })
        .collect())
}
