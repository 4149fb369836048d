//! Corpus runs: every network file in a directory is parsed, reduced,
//! restricted to its giant component, profiled by both analyses, and written
//! out as per-network records plus aggregate tables.

use crate::degreedist::{analyze_degrees, ccdf_table, Alternative, CcdfRow, DegreeClassification, DegreeConfig, DegreeReport};
use crate::graph::{giant_component, is_connected, Graph};
use crate::ingest::{normalize, read_network, Format, PreprocessLog};
use crate::measures::TransitivityMode;
use crate::rewire::{LatticeMetric, DEFAULT_LATTICIZE_SWAPS_PER_EDGE, DEFAULT_RANDOMIZE_SWAPS_PER_EDGE};
use crate::smallworld::{omega_with, OmegaClass, OmegaConfig, SmallWorldReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

pub const HIST_LO: f64 = -2.0;
pub const HIST_BINS: usize = 40;
pub const HIST_WIDTH: f64 = 0.1;
pub const ISO_OMEGA: [f64; 3] = [-0.5, 0.0, 0.5];

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("no network files found in {0}")]
    EmptyCorpus(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("class metadata: {0}")]
    Metadata(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemClass {
    Biological,
    SocialInteraction,
    Trophic,
    Bibliographic,
    Institutional,
    Program,
    #[default]
    Other,
}

impl SystemClass {
    pub const ALL: [SystemClass; 7] = [
        SystemClass::Biological,
        SystemClass::SocialInteraction,
        SystemClass::Trophic,
        SystemClass::Bibliographic,
        SystemClass::Institutional,
        SystemClass::Program,
        SystemClass::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemClass::Biological => "biological",
            SystemClass::SocialInteraction => "social-interaction",
            SystemClass::Trophic => "trophic",
            SystemClass::Bibliographic => "bibliographic",
            SystemClass::Institutional => "institutional",
            SystemClass::Program => "program",
            SystemClass::Other => "other",
        }
    }
}

impl fmt::Display for SystemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        SystemClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown system class {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub out: PathBuf,
    pub seed: u64,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
    /// Overrides both reference budgets when set.
    pub swaps_per_edge: Option<u32>,
    pub randomize_swaps_per_edge: u32,
    pub latticize_swaps_per_edge: u32,
    pub connectivity_guard: bool,
    pub lattice_metric: LatticeMetric,
    pub clamp_lattice: bool,
    pub realizations: usize,
    pub bootstrap: usize,
    pub gof_threshold: f64,
    pub significance: f64,
    pub omega_band: f64,
    pub degenerate_threshold: f64,
    pub size_cap_nodes: usize,
    pub size_cap_edges: usize,
    pub transitivity_mode: TransitivityMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        let omega = OmegaConfig::default();
        let degrees = DegreeConfig::default();
        RunConfig {
            corpus: PathBuf::from("."),
            out: PathBuf::from("out"),
            seed: 0,
            workers: 0,
            swaps_per_edge: None,
            randomize_swaps_per_edge: DEFAULT_RANDOMIZE_SWAPS_PER_EDGE,
            latticize_swaps_per_edge: DEFAULT_LATTICIZE_SWAPS_PER_EDGE,
            connectivity_guard: true,
            lattice_metric: omega.metric,
            clamp_lattice: omega.clamp_lattice,
            realizations: omega.realizations,
            bootstrap: degrees.bootstraps,
            gof_threshold: degrees.gof_threshold,
            significance: degrees.significance,
            omega_band: omega.band,
            degenerate_threshold: omega.degenerate_threshold,
            size_cap_nodes: 50_000,
            size_cap_edges: 500_000,
            transitivity_mode: TransitivityMode::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<RunConfig, PipelineError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let unit = [
            ("gof_threshold", self.gof_threshold),
            ("significance", self.significance),
            ("omega_band", self.omega_band),
            ("degenerate_threshold", self.degenerate_threshold),
        ];
        for (name, v) in unit {
            if !(v > 0.0 && v < 1.0) {
                return Err(PipelineError::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if self.size_cap_nodes < 4 || self.size_cap_edges < 4 {
            return Err(PipelineError::Config("size caps must be at least 4".into()));
        }
        if self.realizations < 1 || self.bootstrap < 1 {
            return Err(PipelineError::Config("realizations and bootstrap must be at least 1".into()));
        }
        let budgets = [self.randomize_swaps_per_edge, self.latticize_swaps_per_edge];
        if self.swaps_per_edge == Some(0) || budgets.contains(&0) {
            return Err(PipelineError::Config("swaps per edge must be at least 1".into()));
        }
        Ok(())
    }

    pub fn omega_config(&self, seed: u64) -> OmegaConfig {
        OmegaConfig {
            realizations: self.realizations,
            randomize_swaps_per_edge: self.swaps_per_edge.unwrap_or(self.randomize_swaps_per_edge),
            latticize_swaps_per_edge: self.swaps_per_edge.unwrap_or(self.latticize_swaps_per_edge),
            seed,
            connectivity_guard: self.connectivity_guard,
            metric: self.lattice_metric,
            transitivity_mode: self.transitivity_mode,
            clamp_lattice: self.clamp_lattice,
            band: self.omega_band,
            degenerate_threshold: self.degenerate_threshold,
        }
    }

    pub fn degree_config(&self, seed: u64) -> DegreeConfig {
        DegreeConfig {
            bootstraps: self.bootstrap,
            seed,
            gof_threshold: self.gof_threshold,
            significance: self.significance,
        }
    }
}

/// FNV-1a over the id bytes mixed into the base seed with splitmix64, so a
/// network's seed depends only on its own id.
pub fn network_seed(base: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = base ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkipReason {
    pub stage: String,
    pub reason: String,
}

impl SkipReason {
    fn new(stage: &str, reason: impl fmt::Display) -> Self {
        SkipReason {
            stage: stage.to_string(),
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkRecord {
    pub id: String,
    /// File name inside the corpus directory.
    pub source: String,
    pub system_class: SystemClass,
    pub seed: u64,
    /// Size after cleanup, before giant-component extraction.
    pub n: usize,
    pub m: usize,
    pub preprocess: PreprocessLog,
    /// True when the cleaned graph was disconnected and only its giant component was analysed.
    pub giant_component: bool,
    pub analyzed_n: usize,
    pub analyzed_m: usize,
    pub small_world: Option<SmallWorldReport>,
    pub degrees: Option<DegreeReport>,
    pub skip_reasons: Vec<SkipReason>,
    #[serde(skip)]
    pub ccdf: Vec<CcdfRow>,
}

impl NetworkRecord {
    fn new(id: String, source: String, system_class: SystemClass, seed: u64) -> Self {
        NetworkRecord {
            id,
            source,
            system_class,
            seed,
            n: 0,
            m: 0,
            preprocess: PreprocessLog::default(),
            giant_component: false,
            analyzed_n: 0,
            analyzed_m: 0,
            small_world: None,
            degrees: None,
            skip_reasons: Vec::new(),
            ccdf: Vec::new(),
        }
    }

    pub fn completed(&self) -> bool {
        self.small_world.is_some() || self.degrees.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub path: PathBuf,
}

/// Network files directly inside `dir`, sorted by file name. Ids are file
/// stems, or full file names where two files share a stem.
pub fn scan_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, PipelineError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && Format::from_path(p).is_some())
        .filter(|p| p.file_stem().and_then(|s| s.to_str()) != Some("classes"))
        .collect();
    paths.sort();
    let stem = |p: &Path| p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
    let mut stems: HashMap<String, usize> = HashMap::new();
    for p in &paths {
        *stems.entry(stem(p)).or_default() += 1;
    }
    Ok(paths
        .into_iter()
        .map(|p| {
            let s = stem(&p);
            let id = if stems[&s] > 1 {
                p.file_name().unwrap_or_default().to_string_lossy().into_owned()
            } else {
                s
            };
            CorpusEntry { id, path: p }
        })
        .collect())
}

/// Reads `classes.csv` (`id,class` rows, optional header) or `classes.json`
/// (`{"id": "class"}`) from the corpus directory, if present.
pub fn load_classes(dir: &Path) -> Result<HashMap<String, SystemClass>, PipelineError> {
    let mut map = HashMap::new();
    let csv_path = dir.join("classes.csv");
    let json_path = dir.join("classes.json");
    if csv_path.is_file() {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_path(&csv_path)?;
        for row in reader.records() {
            let row = row?;
            let (Some(id), Some(class)) = (row.get(0), row.get(1)) else {
                return Err(PipelineError::Metadata(format!("row {:?} needs id and class", row)));
            };
            if id == "id" && class == "class" {
                continue;
            }
            map.insert(id.to_string(), class.parse().map_err(PipelineError::Metadata)?);
        }
    } else if json_path.is_file() {
        let text = fs::read_to_string(&json_path).map_err(io_err(&json_path))?;
        let raw: BTreeMap<String, String> = serde_json::from_str(&text)?;
        for (id, class) in raw {
            map.insert(id, class.parse().map_err(PipelineError::Metadata)?);
        }
    }
    Ok(map)
}

/// Degree analysis and, under the size cap, ω on an already-reduced graph.
pub fn analyze_graph(graph: &Graph, config: &RunConfig, seed: u64, record: &mut NetworkRecord) {
    record.n = graph.n();
    record.m = graph.m();
    let giant;
    let g = if is_connected(graph) {
        graph
    } else {
        giant = giant_component(graph).0;
        record.giant_component = true;
        &giant
    };
    record.analyzed_n = g.n();
    record.analyzed_m = g.m();

    let degrees: Vec<u64> = g.degree_sequence().as_slice().to_vec();
    match analyze_degrees(&degrees, &config.degree_config(seed)) {
        Ok(report) => {
            record.ccdf = ccdf_table(&degrees, &report.fit);
            record.degrees = Some(report);
        }
        Err(e) => record.skip_reasons.push(SkipReason::new("degrees", e)),
    }

    if g.n() > config.size_cap_nodes || g.m() > config.size_cap_edges {
        record.skip_reasons.push(SkipReason::new("omega", "size-cap"));
    } else {
        match omega_with(g, &config.omega_config(seed)) {
            Ok(report) => record.small_world = Some(report),
            Err(e) => record.skip_reasons.push(SkipReason::new("omega", e)),
        }
    }
}

pub fn process_entry(entry: &CorpusEntry, class: SystemClass, config: &RunConfig) -> NetworkRecord {
    let seed = network_seed(config.seed, &entry.id);
    let source = entry
        .path
        .file_name()
        .unwrap_or_default()
        .to_string_lossy()
        .into_owned();
    let mut record = NetworkRecord::new(entry.id.clone(), source, class, seed);
    let raw = match read_network(&entry.path) {
        Ok(raw) => raw,
        Err(e) => {
            record.skip_reasons.push(SkipReason::new("parse", e));
            return record;
        }
    };
    let reduced = match normalize(&raw) {
        Ok(r) => r,
        Err(e) => {
            record.skip_reasons.push(SkipReason::new("normalize", e));
            return record;
        }
    };
    record.preprocess = reduced.log;
    analyze_graph(&reduced.graph, config, seed, &mut record);
    record
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    /// Sorted by id.
    pub records: Vec<NetworkRecord>,
    pub summary: Summary,
}

impl CorpusReport {
    pub fn completed(&self) -> usize {
        self.records.iter().filter(|r| r.completed()).count()
    }
}

pub fn run_corpus(config: &RunConfig) -> Result<CorpusReport, PipelineError> {
    config.validate()?;
    let entries = scan_corpus(&config.corpus)?;
    if entries.is_empty() {
        return Err(PipelineError::EmptyCorpus(config.corpus.display().to_string()));
    }
    let classes = load_classes(&config.corpus)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    let mut records: Vec<NetworkRecord> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| process_entry(e, classes.get(&e.id).copied().unwrap_or_default(), config))
            .collect()
    });
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = summarize(&records, config);
    Ok(CorpusReport { records, summary })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ClassBreakdown {
    pub networks: usize,
    pub omega: BTreeMap<String, usize>,
    pub degree: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub networks: usize,
    pub completed: usize,
    pub giant_component_extracted: usize,
    pub omega_analyzed: usize,
    /// Share of ω-analysed networks with −band ≤ ω ≤ band.
    pub omega_band_fraction: f64,
    pub omega_band: f64,
    pub omega_classes: BTreeMap<String, usize>,
    pub degree_classified: usize,
    /// Share of degree-classified networks per class; sums to 1 when any are classified.
    pub degree_class_proportions: BTreeMap<String, f64>,
    pub by_system_class: BTreeMap<String, ClassBreakdown>,
    pub settings: RunSettings,
}

/// Parameters that affect the numbers, echoed so outputs are self-describing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSettings {
    pub seed: u64,
    pub realizations: usize,
    pub randomize_swaps_per_edge: u32,
    pub latticize_swaps_per_edge: u32,
    pub connectivity_guard: bool,
    pub lattice_metric: LatticeMetric,
    pub clamp_lattice: bool,
    pub transitivity_mode: TransitivityMode,
    pub bootstrap: usize,
    pub gof_threshold: f64,
    pub significance: f64,
    pub degenerate_threshold: f64,
    pub size_cap_nodes: usize,
    pub size_cap_edges: usize,
}

pub fn summarize(records: &[NetworkRecord], config: &RunConfig) -> Summary {
    let omega = config.omega_config(config.seed);
    let mut omega_classes: BTreeMap<String, usize> = OmegaClass::ALL.iter().map(|c| (c.to_string(), 0)).collect();
    let mut degree_counts: BTreeMap<String, usize> =
        DegreeClassification::ALL.iter().map(|c| (c.to_string(), 0)).collect();
    let mut by_class: BTreeMap<String, ClassBreakdown> = BTreeMap::new();
    let (mut omega_analyzed, mut in_band, mut degree_classified) = (0, 0, 0);
    for r in records {
        let entry = by_class.entry(r.system_class.to_string()).or_default();
        entry.networks += 1;
        if let Some(sw) = &r.small_world {
            omega_analyzed += 1;
            if sw.omega.abs() <= config.omega_band {
                in_band += 1;
            }
            *omega_classes.entry(sw.classification.to_string()).or_default() += 1;
            *entry.omega.entry(sw.classification.to_string()).or_default() += 1;
        }
        if let Some(d) = &r.degrees {
            degree_classified += 1;
            *degree_counts.entry(d.classification.to_string()).or_default() += 1;
            *entry.degree.entry(d.classification.to_string()).or_default() += 1;
        }
    }
    let share = |count: usize, total: usize| if total == 0 { 0.0 } else { count as f64 / total as f64 };
    Summary {
        networks: records.len(),
        completed: records.iter().filter(|r| r.completed()).count(),
        giant_component_extracted: records.iter().filter(|r| r.giant_component).count(),
        omega_analyzed,
        omega_band_fraction: share(in_band, omega_analyzed),
        omega_band: config.omega_band,
        omega_classes,
        degree_classified,
        degree_class_proportions: degree_counts
            .into_iter()
            .map(|(k, v)| (k, share(v, degree_classified)))
            .collect(),
        by_system_class: by_class,
        settings: RunSettings {
            seed: config.seed,
            realizations: omega.realizations,
            randomize_swaps_per_edge: omega.randomize_swaps_per_edge,
            latticize_swaps_per_edge: omega.latticize_swaps_per_edge,
            connectivity_guard: omega.connectivity_guard,
            lattice_metric: omega.metric,
            clamp_lattice: omega.clamp_lattice,
            transitivity_mode: omega.transitivity_mode,
            bootstrap: config.bootstrap,
            gof_threshold: config.gof_threshold,
            significance: config.significance,
            degenerate_threshold: config.degenerate_threshold,
            size_cap_nodes: config.size_cap_nodes,
            size_cap_edges: config.size_cap_edges,
        },
    }
}

/// Bin index over [−2, 2) in steps of 0.1; values outside land in the edge bins.
pub fn omega_bin(omega: f64) -> usize {
    let i = ((omega - HIST_LO) / HIST_WIDTH + 1e-9).floor();
    i.clamp(0.0, (HIST_BINS - 1) as f64) as usize
}

pub fn omega_histogram(records: &[NetworkRecord]) -> Vec<usize> {
    let mut counts = vec![0; HIST_BINS];
    for sw in records.iter().filter_map(|r| r.small_world.as_ref()) {
        counts[omega_bin(sw.omega)] += 1;
    }
    counts
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn record_header() -> Vec<String> {
    let mut h: Vec<String> = [
        "id",
        "source",
        "system_class",
        "seed",
        "n",
        "m",
        "giant_component",
        "analyzed_n",
        "analyzed_m",
        "preprocess",
        "L",
        "T",
        "L_A",
        "T_T",
        "T_T_mean",
        "ratio_L",
        "ratio_T",
        "omega",
        "omega_class",
        "realizations",
        "alpha",
        "xmin",
        "ntail",
        "ks",
        "low_confidence",
        "gof_pvalue",
        "bootstraps",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for alt in Alternative::ALL {
        let a = alt.as_str().replace('-', "_");
        h.push(format!("{a}_logratio"));
        h.push(format!("{a}_pvalue"));
        h.push(format!("{a}_verdict"));
    }
    h.push("degree_class".into());
    h.push("skip_reasons".into());
    h
}

pub fn record_row(r: &NetworkRecord) -> Vec<String> {
    let sw = r.small_world.as_ref();
    let d = r.degrees.as_ref();
    let mut row = vec![
        r.id.clone(),
        r.source.clone(),
        r.system_class.to_string(),
        r.seed.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.giant_component.to_string(),
        r.analyzed_n.to_string(),
        r.analyzed_m.to_string(),
        r.preprocess.summary(),
        opt(sw.map(|s| s.path_length)),
        opt(sw.map(|s| s.transitivity)),
        opt(sw.map(|s| s.random_path_length)),
        opt(sw.map(|s| s.lattice_transitivity)),
        opt(sw.map(|s| s.lattice_transitivity_mean)),
        opt(sw.map(|s| s.ratio_l)),
        opt(sw.map(|s| s.ratio_t)),
        opt(sw.map(|s| s.omega)),
        opt(sw.map(|s| s.classification)),
        opt(sw.map(|s| s.realizations)),
        opt(d.map(|d| d.fit.alpha)),
        opt(d.map(|d| d.fit.xmin)),
        opt(d.map(|d| d.fit.ntail)),
        opt(d.map(|d| d.fit.ks)),
        opt(d.map(|d| d.fit.low_confidence)),
        opt(d.map(|d| d.gof.pvalue)),
        opt(d.map(|d| d.gof.bootstraps)),
    ];
    for alt in Alternative::ALL {
        let c = d.and_then(|d| d.comparison(alt));
        match c {
            Some(c) if c.error.is_none() => {
                row.push(c.logratio.to_string());
                row.push(c.pvalue.to_string());
                row.push(c.verdict.as_str().to_string());
            }
            Some(_) => row.extend(["".into(), "".into(), "fit-failed".into()]),
            None => row.extend(["".into(), "".into(), "".into()]),
        }
    }
    row.push(opt(d.map(|d| d.classification)));
    let skips: Vec<String> = r.skip_reasons.iter().map(|s| format!("{}: {}", s.stage, s.reason)).collect();
    row.push(skips.join("; "));
    row
}

fn write_csv<P: AsRef<Path>>(path: P, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_path(path.as_ref())?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().map_err(io_err(path.as_ref()))?;
    Ok(())
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Writes records.csv, records.jsonl, omega_hist.csv, scatter.csv,
/// summary.json and one ccdf/<id>.csv per fitted network into `out`.
pub fn emit_reports(report: &CorpusReport, out: &Path) -> Result<(), PipelineError> {
    fs::create_dir_all(out).map_err(io_err(out))?;
    let records = &report.records;

    write_csv(out.join("records.csv"), &record_header(), records.iter().map(record_row))?;

    let jsonl = out.join("records.jsonl");
    let mut f = std::io::BufWriter::new(fs::File::create(&jsonl).map_err(io_err(&jsonl))?);
    for r in records {
        serde_json::to_writer(&mut f, r)?;
        f.write_all(b"\n").map_err(io_err(&jsonl))?;
    }
    f.flush().map_err(io_err(&jsonl))?;

    let counts = omega_histogram(records);
    write_csv(
        out.join("omega_hist.csv"),
        &strings(&["bin_lo", "bin_hi", "count"]),
        counts.iter().enumerate().map(|(i, c)| {
            let lo = HIST_LO + i as f64 * HIST_WIDTH;
            vec![format!("{lo:.1}"), format!("{:.1}", lo + HIST_WIDTH), c.to_string()]
        }),
    )?;

    let mut header = strings(&["id", "ratio_L", "ratio_T", "omega", "omega_class", "degree_class", "system_class"]);
    header.extend(ISO_OMEGA.iter().map(|w| format!("iso_ratio_T_omega_{w}")));
    write_csv(
        out.join("scatter.csv"),
        &header,
        records.iter().filter_map(|r| {
            let sw = r.small_world.as_ref()?;
            let mut row = vec![
                r.id.clone(),
                sw.ratio_l.to_string(),
                sw.ratio_t.to_string(),
                sw.omega.to_string(),
                sw.classification.to_string(),
                opt(r.degrees.as_ref().map(|d| d.classification)),
                r.system_class.to_string(),
            ];
            // ratio_T on the iso-ω curve through this point's ratio_L
            row.extend(ISO_OMEGA.iter().map(|w| (sw.ratio_l - w).to_string()));
            Some(row)
        }),
    )?;

    let summary = out.join("summary.json");
    fs::write(&summary, serde_json::to_string_pretty(&report.summary)? + "\n").map_err(io_err(&summary))?;

    let ccdf_dir = out.join("ccdf");
    for r in records.iter().filter(|r| !r.ccdf.is_empty()) {
        fs::create_dir_all(&ccdf_dir).map_err(io_err(&ccdf_dir))?;
        write_csv(
            ccdf_dir.join(format!("{}.csv", r.id)),
            &strings(&["degree", "empirical_ccdf", "fitted_ccdf"]),
            r.ccdf
                .iter()
                .map(|row| vec![row.degree.to_string(), row.empirical.to_string(), opt(row.fitted)]),
        )?;
    }
    Ok(())
}
