//! Serializable suite report and its renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: ConfigSummary,
    /// Ordered by dataset identifier.
    pub datasets: Vec<DatasetReport>,
    pub counts: SuiteCounts,
    /// `None` when depth was not requested.
    pub depth: Option<DepthOutcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub model_set: Option<String>,
    pub metric_set: Option<String>,
    pub metrics: Vec<MetricDto>,
    pub cycle_pool: Vec<String>,
    pub flip_metric: String,
    pub flip_k: usize,
    pub tie_break: String,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricDto {
    pub name: String,
    pub orientation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetReport {
    pub dataset: String,
    pub outcome: DatasetOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DatasetOutcome {
    Analyzed(Box<Analysis>),
    Skipped { reason: String, complete_models: usize },
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub models: Vec<String>,
    /// One column per metric, best model first, with raw values.
    pub rankings: Vec<MetricColumn>,
    pub majority: MajorityDto,
    pub domains: Option<DomainsDto>,
    pub cycles: Option<CyclesDto>,
    pub flips: Option<FlipsDto>,
    /// Every certificate in this entry re-verified against the profile.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricColumn {
    pub metric: String,
    pub entries: Vec<ScoreEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreEntry {
    pub model: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorityDto {
    pub weak_transitive: bool,
    pub strict_transitive: bool,
    /// `(a, b, c)` with `a ⪰ b`, `b ⪰ c` but not `a ⪰ c` in the weak relation.
    pub intransitive_triple: Option<[String; 3]>,
    /// Indifference classes of the weak relation, best first, when transitive.
    pub order: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainsDto {
    /// `None` when the model set is too large for axis enumeration.
    pub single_peaked: Option<bool>,
    pub axis: Option<Vec<String>>,
    pub group_separable: bool,
    pub separation_tree: Option<TreeDto>,
    pub failing_set: Option<Vec<String>>,
    /// `None` for single-metric profiles.
    pub distance_degree: Option<usize>,
    pub distance_pair: Option<[String; 2]>,
}

/// A node of a separation tree; internal nodes have two children, the
/// separation first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeDto {
    pub models: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclesDto {
    pub note: Option<String>,
    pub witnesses: Vec<WitnessDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub metrics: [String; 3],
    /// `cycle[0]` beats `cycle[1]` beats `cycle[2]` beats `cycle[0]`.
    pub cycle: [String; 3],
    pub buffer: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlipsDto {
    pub note: Option<String>,
    pub base: Vec<String>,
    pub before: Vec<RankedDto>,
    pub candidates: usize,
    /// Only the candidates whose addition flips a base pair.
    pub flipping: Vec<FlipDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankedDto {
    pub model: String,
    pub avg_rank: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlipDto {
    pub added: String,
    pub after: Vec<RankedDto>,
    /// `(a, b)`: `a` above `b` before the addition, below it after.
    pub pairs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCounts {
    pub datasets: usize,
    pub analyzed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub weak_majority_transitive: usize,
    pub single_peaked: Option<usize>,
    pub single_peaked_unchecked: Option<usize>,
    pub group_separable: Option<usize>,
    pub degree_one: Option<usize>,
    pub cyclic: Option<usize>,
    pub flip_evaluated: Option<usize>,
    pub flipped: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DepthOutcome {
    Present(DepthDto),
    Absent { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthDto {
    /// Models shared by every analyzed dataset; the family ranks these.
    pub models: Vec<String>,
    pub members: Vec<MemberDto>,
    pub min_level: usize,
    pub deepest: Vec<DeepestDto>,
    pub consensus_pairs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberDto {
    pub dataset: String,
    pub ranking: Vec<String>,
    pub level: usize,
    /// The majority relation had indifferent pairs, split by the tie rule.
    pub tie_broken: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeepestDto {
    pub ranking: Vec<String>,
    pub datasets: Vec<String>,
}

/// Per-dataset booleans summed into [`SuiteCounts`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DatasetFlags {
    pub weak_transitive: bool,
    pub single_peaked: bool,
    pub single_peaked_unchecked: bool,
    pub group_separable: bool,
    pub degree_one: bool,
    pub cyclic: bool,
    pub flip_evaluated: bool,
    pub flipped: bool,
}

impl Analysis {
    pub fn flags(&self) -> DatasetFlags {
        let d = self.domains.as_ref();
        let flips = self.flips.as_ref();
        DatasetFlags {
            weak_transitive: self.majority.weak_transitive,
            single_peaked: d.is_some_and(|d| d.single_peaked == Some(true)),
            single_peaked_unchecked: d.is_some_and(|d| d.single_peaked.is_none()),
            group_separable: d.is_some_and(|d| d.group_separable),
            // a single ranking is trivially within degree 1
            degree_one: d.is_some_and(|d| d.distance_degree.is_none_or(|k| k <= 1)),
            cyclic: self.cycles.as_ref().is_some_and(|c| !c.witnesses.is_empty()),
            flip_evaluated: flips.is_some_and(|f| f.note.is_none()),
            flipped: flips.is_some_and(|f| !f.flipping.is_empty()),
        }
    }
}

impl SuiteCounts {
    pub fn tally(datasets: &[DatasetReport], domains: bool, cycles: bool, flips: bool) -> SuiteCounts {
        let mut c = SuiteCounts {
            datasets: datasets.len(),
            ..Default::default()
        };
        let mut f = Vec::new();
        for d in datasets {
            match &d.outcome {
                DatasetOutcome::Analyzed(a) => f.push(a.flags()),
                DatasetOutcome::Skipped { .. } => c.skipped += 1,
                DatasetOutcome::Failed { .. } => c.failed += 1,
            }
        }
        c.analyzed = f.len();
        let sum = |p: fn(&DatasetFlags) -> bool| f.iter().filter(|x| p(x)).count();
        c.weak_majority_transitive = sum(|x| x.weak_transitive);
        if domains {
            c.single_peaked = Some(sum(|x| x.single_peaked));
            c.single_peaked_unchecked = Some(sum(|x| x.single_peaked_unchecked));
            c.group_separable = Some(sum(|x| x.group_separable));
            c.degree_one = Some(sum(|x| x.degree_one));
        }
        if cycles {
            c.cyclic = Some(sum(|x| x.cyclic));
        }
        if flips {
            c.flip_evaluated = Some(sum(|x| x.flip_evaluated));
            c.flipped = Some(sum(|x| x.flipped));
        }
        c
    }
}

impl SuiteReport {
    /// Internal consistency problems; empty for a sound report.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for d in &self.datasets {
            if let DatasetOutcome::Analyzed(a) = &d.outcome {
                if !a.verified {
                    out.push(format!("dataset `{}`: certificate failed re-verification", d.dataset));
                }
            }
        }
        if self.datasets.windows(2).any(|w| w[0].dataset >= w[1].dataset) {
            out.push("datasets are not in identifier order".into());
        }
        let c = &self.counts;
        let recount = SuiteCounts::tally(
            &self.datasets,
            c.single_peaked.is_some(),
            c.cyclic.is_some(),
            c.flipped.is_some(),
        );
        if &recount != c {
            out.push("suite counts differ from the per-dataset flags".into());
        }
        if c.analyzed + c.skipped + c.failed != c.datasets {
            out.push("dataset outcomes do not add up".into());
        }
        if let Some(DepthOutcome::Present(depth)) = &self.depth {
            if c.weak_majority_transitive != c.analyzed {
                out.push("depth present although some majority relation is intransitive".into());
            }
            let deepest_ok = depth.deepest.iter().all(|d| {
                depth
                    .members
                    .iter()
                    .filter(|m| m.ranking == d.ranking)
                    .all(|m| m.level == depth.min_level)
            }) && depth.members.iter().all(|m| m.level >= depth.min_level);
            let pos = |r: &[String], x: &str| r.iter().position(|m| m == x);
            let consensus_ok = depth.deepest.iter().all(|d| {
                depth
                    .consensus_pairs
                    .iter()
                    .all(|[a, b]| pos(&d.ranking, a) < pos(&d.ranking, b))
            });
            if !(deepest_ok && consensus_ok) {
                out.push("deepest rankings are inconsistent with their levels".into());
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
    PlotData,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "table" => Ok(ReportFormat::Table),
            "plotdata" => Ok(ReportFormat::PlotData),
            other => Err(format!("unknown format `{other}` (expected json, table or plotdata)")),
        }
    }
}

pub fn emit_report(report: &SuiteReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Table => render_table(report).into_bytes(),
        ReportFormat::PlotData => render_plot_data(report),
    }
}

/// Up to six decimals, trailing zeros dropped.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

/// Left-aligned columns separated by two spaces.
fn columns(header: &[String], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut width = vec![0; n];
    for row in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < n {
                line.push_str(&" ".repeat(width[i] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn ratio(count: Option<usize>, of: usize) -> Option<String> {
    count.map(|c| format!("{c}/{of}"))
}

fn render_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    let c = &report.counts;
    let _ = writeln!(
        out,
        "suite: {} datasets ({} analyzed, {} skipped, {} failed)",
        c.datasets, c.analyzed, c.skipped, c.failed
    );
    let mut rows = vec![vec![
        "weak majority transitive".to_string(),
        format!("{}/{}", c.weak_majority_transitive, c.analyzed),
    ]];
    let mut push = |label: &str, v: Option<String>| {
        if let Some(v) = v {
            rows.push(vec![label.to_string(), v]);
        }
    };
    push("single-peaked", ratio(c.single_peaked, c.analyzed));
    if c.single_peaked_unchecked.is_some_and(|u| u > 0) {
        push("single-peaked unchecked", ratio(c.single_peaked_unchecked, c.analyzed));
    }
    push("group-separable", ratio(c.group_separable, c.analyzed));
    push("distance degree <= 1", ratio(c.degree_one, c.analyzed));
    push("cyclic", ratio(c.cyclic, c.analyzed));
    push("flipped", c.flipped.map(|f| format!("{f}/{}", c.flip_evaluated.unwrap_or(0))));
    for line in columns(&["".into(), "".into()], &rows).lines().skip(1) {
        let _ = writeln!(out, "  {line}");
    }

    for d in &report.datasets {
        let _ = writeln!(out, "\n== {} ==", d.dataset);
        match &d.outcome {
            DatasetOutcome::Skipped { reason, .. } => {
                let _ = writeln!(out, "skipped: {reason}");
            }
            DatasetOutcome::Failed { reason } => {
                let _ = writeln!(out, "failed: {reason}");
            }
            DatasetOutcome::Analyzed(a) => render_analysis(&mut out, report, a),
        }
    }

    if let Some(depth) = &report.depth {
        let _ = writeln!(out, "\n== depth ==");
        match depth {
            DepthOutcome::Absent { reason } => {
                let _ = writeln!(out, "absent: {reason}");
            }
            DepthOutcome::Present(dp) => {
                let _ = writeln!(
                    out,
                    "{} rankings over {} models, minimal sharing level {}",
                    dp.members.len(),
                    dp.models.len(),
                    dp.min_level
                );
                for deep in &dp.deepest {
                    let _ = writeln!(out, "deepest: {}", deep.ranking.join(" > "));
                    let _ = writeln!(out, "  from: {}", deep.datasets.join(", "));
                }
            }
        }
    }
    out
}

fn render_analysis(out: &mut String, report: &SuiteReport, a: &Analysis) {
    let orientation = |m: &str| {
        report
            .config
            .metrics
            .iter()
            .find(|x| x.name == m)
            .map_or("?", |x| x.orientation.as_str())
            .to_string()
    };
    let header: Vec<String> = a
        .rankings
        .iter()
        .map(|col| format!("{} ({})", col.metric, orientation(&col.metric)))
        .collect();
    let rows: Vec<Vec<String>> = (0..a.models.len())
        .map(|i| {
            a.rankings
                .iter()
                .map(|col| format!("{} ({})", col.entries[i].model, fmt_num(col.entries[i].value)))
                .collect()
        })
        .collect();
    out.push_str(&columns(&header, &rows));

    let m = &a.majority;
    match (&m.order, &m.intransitive_triple) {
        (Some(order), _) => {
            let classes: Vec<String> = order.iter().map(|c| c.join(" ~ ")).collect();
            let _ = writeln!(out, "majority: {}", classes.join(" > "));
        }
        (None, Some([x, y, z])) => {
            let _ = writeln!(out, "majority: intransitive ({x} >= {y} >= {z}, not {x} >= {z})");
        }
        (None, None) => {
            let _ = writeln!(out, "majority: intransitive");
        }
    }

    if let Some(d) = &a.domains {
        let sp = match (d.single_peaked, &d.axis) {
            (Some(true), Some(axis)) => format!("yes, axis {}", axis.join(" | ")),
            (Some(_), _) => "no".into(),
            (None, _) => "unchecked".into(),
        };
        let gs = if d.group_separable { "yes" } else { "no" };
        let deg = d.distance_degree.map_or("-".to_string(), |k| k.to_string());
        let _ = writeln!(out, "single-peaked: {sp}");
        let _ = writeln!(out, "group-separable: {gs}; distance degree: {deg}");
    }

    if let Some(c) = &a.cycles {
        if let Some(note) = &c.note {
            let _ = writeln!(out, "cycles: {note}");
        } else {
            let _ = writeln!(out, "cycles: {}", c.witnesses.len());
            for w in &c.witnesses {
                let [x, y, z] = &w.cycle;
                let _ = writeln!(
                    out,
                    "  {x} > {y} > {z} > {x}  [{}]  buffer {}",
                    w.metrics.join(", "),
                    fmt_num(w.buffer)
                );
            }
        }
    }

    if let Some(f) = &a.flips {
        if let Some(note) = &f.note {
            let _ = writeln!(out, "flips: {note}");
            return;
        }
        let _ = writeln!(
            out,
            "flips: {} of {} added models flip the top {} by {}",
            f.flipping.len(),
            f.candidates,
            f.base.len(),
            report.config.flip_metric
        );
        for flip in &f.flipping {
            let pairs: Vec<String> = flip.pairs.iter().map(|[x, y]| format!("{x}/{y}")).collect();
            let _ = writeln!(out, "  +{}: {}", flip.added, pairs.join(", "));
        }
        if let Some(first) = f.flipping.first() {
            let header = vec!["Before".to_string(), format!("After (+{})", first.added)];
            let cell = |r: Option<&RankedDto>| r.map_or(String::new(), |r| format!("{} ({})", r.model, fmt_num(r.avg_rank)));
            let rows: Vec<Vec<String>> = (0..first.after.len())
                .map(|i| vec![cell(f.before.get(i)), cell(first.after.get(i))])
                .collect();
            out.push_str(&columns(&header, &rows));
        }
    }
}

pub const PLOT_HEADER: [&str; 6] = ["kind", "dataset", "series", "position", "model", "rank"];

/// `peak` rows: for each single-peaked dataset, every (metric, axis
/// position) with that metric's rank of the model at the position. `order`
/// rows: per-dataset majority orders and the deepest suite rankings.
fn render_plot_data(report: &SuiteReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PLOT_HEADER).expect("in-memory write");
    let mut row = |kind: &str, dataset: &str, series: &str, position: usize, model: &str, rank: usize| {
        w.write_record([kind, dataset, series, &position.to_string(), model, &rank.to_string()])
            .expect("in-memory write");
    };
    for d in &report.datasets {
        let DatasetOutcome::Analyzed(a) = &d.outcome else { continue };
        if let Some(axis) = a.domains.as_ref().and_then(|x| x.axis.as_ref()) {
            for col in &a.rankings {
                for (p, model) in axis.iter().enumerate() {
                    let rank = col.entries.iter().position(|e| &e.model == model).expect("axis model is ranked");
                    row("peak", &d.dataset, &col.metric, p + 1, model, rank + 1);
                }
            }
        }
        if let Some(order) = &a.majority.order {
            let mut p = 0;
            for (class, models) in order.iter().enumerate() {
                for model in models {
                    p += 1;
                    row("order", &d.dataset, "majority", p, model, class + 1);
                }
            }
        }
    }
    if let Some(DepthOutcome::Present(dp)) = &report.depth {
        for (i, deep) in dp.deepest.iter().enumerate() {
            for (p, model) in deep.ranking.iter().enumerate() {
                row("order", "", &format!("deepest{}", i + 1), p + 1, model, p + 1);
            }
        }
    }
    w.into_inner().expect("in-memory flush")
}
