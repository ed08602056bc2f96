//! Middle-out candidate generation, consistency filtering, ranking and
//! multi-keypoint fusion.
//!
//! Candidate patterns are grown from the middle unit of the polyline
//! outward, alternating right then left, so redundant strokes at the head
//! and tail of the trajectory cannot corrupt the core of the hypothesis.
//! Joining a new cipher onto a candidate requires the overlapping segment
//! to map to the same keys the candidate already assigned.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::check::{check_track, CheckConfig, CheckResult};
use crate::cipher::{build_cipher_dictionary, Cipher};
use crate::geom::{proper_crossing, segments_from_points, Segment};
use crate::grid::{key_position, midpoint_key};
use crate::pattern::{validate_pattern, Pattern};
use crate::rdp::{default_epsilon, prune_shallow_vertices, rdp_simplify};
use crate::trajectory::Trajectory;
use crate::unit::{extract_units, unit_similarity, SimilarityParams, Unit};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("no cipher matches the middle unit")]
    NoCandidates,
    #[error("no trajectory survived the validity check")]
    AllTrajectoriesInvalid,
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Max candidates retained after each update step.
    pub beam_width: usize,
    pub similarity: SimilarityParams,
    pub consistency_filter: bool,
    /// Minimum consumed units for a candidate to be emitted. `None` means
    /// every unit, except that with `exclude_ends` the boundary units
    /// (which may cover redundant head/tail strokes) are not required.
    pub min_units_consumed: Option<usize>,
    /// Ignore the first and last polyline segment in the consistency
    /// window and in the completion requirement.
    pub exclude_ends: bool,
    /// Compare intersection strings by containment instead of equality.
    pub containment_match: bool,
    pub unit_weight: f64,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            beam_width: 5000,
            similarity: SimilarityParams::default(),
            consistency_filter: true,
            min_units_consumed: None,
            exclude_ends: true,
            containment_match: false,
            unit_weight: 1.0,
        }
    }
}

/// A partial or complete pattern hypothesis.
#[derive(Debug, Clone)]
pub struct CandidateEntry {
    /// Keys in drawing order, including forced pass-through dots.
    pub keys: Vec<u8>,
    /// Inclusive range of polyline segment indexes this candidate covers.
    pub passed_segments: (usize, usize),
    pub confidence: f64,
    /// Did the candidate consume every unit of the polyline?
    pub complete: bool,
}

#[derive(Debug, Clone)]
struct Candidate {
    tp_keys: VecDeque<u8>,
    keys: VecDeque<u8>,
    used: u16,
    confidence: f64,
    lo_unit: usize,
    hi_unit: usize,
}

impl Candidate {
    fn consumed(&self) -> usize {
        self.hi_unit - self.lo_unit + 1
    }

    fn push_back(&mut self, key: u8) -> bool {
        if self.used & (1 << key) != 0 {
            return false;
        }
        self.keys.push_back(key);
        self.used |= 1 << key;
        true
    }

    fn push_front(&mut self, key: u8) -> bool {
        if self.used & (1 << key) != 0 {
            return false;
        }
        self.keys.push_front(key);
        self.used |= 1 << key;
        true
    }
}

/// Append the edge from..to at the drawing end, returning every legal
/// variant. A pass-through dot already in the candidate is skipped; an
/// unvisited one forks the hypothesis: the dot is either selected by this
/// edge, or it will be drawn earlier by strokes a later leftward extension
/// prepends (middle-out construction order is not drawing order, so both
/// can be true). Final pattern validation settles which fork was legal.
fn append_edge(cand: &Candidate, from: u8, to: u8, out: &mut Vec<Candidate>) {
    match midpoint_key(from, to) {
        Some(mid) if cand.used & (1 << mid) == 0 => {
            let mut a = cand.clone();
            a.keys.push_back(mid);
            a.used |= 1 << mid;
            if a.push_back(to) {
                out.push(a);
            }
            let mut b = cand.clone();
            if b.push_back(to) {
                out.push(b);
            }
        }
        _ => {
            let mut a = cand.clone();
            if a.push_back(to) {
                out.push(a);
            }
        }
    }
}

/// Prepend the edge from..to at the drawing start. A pass-through dot
/// already in the candidate would be crossed before it is drawn, which the
/// skip rule forbids, so that variant dies. An unvisited dot forks like in
/// `append_edge`: selected by this edge or owed to an even earlier stroke.
fn prepend_edge(cand: &Candidate, from: u8, to: u8, out: &mut Vec<Candidate>) {
    match midpoint_key(from, to) {
        Some(mid) if cand.used & (1 << mid) != 0 => {}
        Some(mid) => {
            let mut a = cand.clone();
            a.keys.push_front(mid);
            a.used |= 1 << mid;
            if a.push_front(from) {
                out.push(a);
            }
            let mut b = cand.clone();
            if b.push_front(from) {
                out.push(b);
            }
        }
        None => {
            let mut a = cand.clone();
            if a.push_front(from) {
                out.push(a);
            }
        }
    }
}

fn seed_candidates(cipher: &Cipher, score: f64, unit_idx: usize, out: &mut Vec<Candidate>) {
    let (d1, d2, d3) = cipher.dots;
    let root = Candidate {
        tp_keys: VecDeque::from([d1, d2, d3]),
        keys: VecDeque::from([d1]),
        used: 1 << d1,
        confidence: score,
        lo_unit: unit_idx,
        hi_unit: unit_idx,
    };
    let mut first = Vec::new();
    append_edge(&root, d1, d2, &mut first);
    for cand in &first {
        append_edge(cand, d2, d3, out);
    }
}

type ScoredCiphers = Vec<(usize, f64)>;

/// Score one unit against the whole dictionary. `weight` is the unit's
/// confidence contribution; boundary units under `exclude_ends` score 0
/// (they may be redundant head/tail strokes, so consuming them must not
/// buy rank), but the similarity rejection still decides extendability.
fn score_unit(unit: &Unit, weight: f64, cfg: &EngineConfig) -> ScoredCiphers {
    build_cipher_dictionary()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            unit_similarity(unit, c, &cfg.similarity)
                .map(|s| (i, s * weight * cfg.unit_weight * unit.weight))
        })
        .collect()
}

fn unit_confidence_weight(idx: usize, n_units: usize, cfg: &EngineConfig) -> f64 {
    if cfg.exclude_ends && n_units >= 3 && (idx == 0 || idx == n_units - 1) {
        0.0
    } else {
        1.0
    }
}

fn index_by_edge(scored: &ScoredCiphers, first_edge: bool) -> HashMap<(u8, u8), ScoredCiphers> {
    let dict = build_cipher_dictionary();
    let mut map: HashMap<(u8, u8), ScoredCiphers> = HashMap::new();
    for &(ci, s) in scored {
        let (d1, d2, d3) = dict[ci].dots;
        let key = if first_edge { (d1, d2) } else { (d2, d3) };
        map.entry(key).or_default().push((ci, s));
    }
    map
}

fn truncate_beam(set: &mut Vec<Candidate>, beam: usize) {
    if set.len() > beam {
        set.sort_by(|a, b| {
            b.confidence
                .total_cmp(&a.confidence)
                .then_with(|| a.keys.cmp(&b.keys))
                .then_with(|| a.lo_unit.cmp(&b.lo_unit))
        });
        set.truncate(beam);
    }
}

fn required_units(n_units: usize, cfg: &EngineConfig) -> usize {
    match cfg.min_units_consumed {
        Some(m) => m.min(n_units),
        None => {
            if cfg.exclude_ends && n_units >= 3 {
                n_units - 2
            } else {
                n_units
            }
        }
    }
}

/// Run the set-update algorithm over the polyline's units and return every
/// retained hypothesis that consumed enough of the trajectory.
pub fn generate_candidates(
    units: &[Unit],
    cfg: &EngineConfig,
) -> Result<Vec<CandidateEntry>, EngineError> {
    assert!(!units.is_empty());
    let dict = build_cipher_dictionary();
    let n = units.len();
    let mid = (n - 1) / 2;

    let scored_mid = score_unit(&units[mid], unit_confidence_weight(mid, n, cfg), cfg);
    let mut set: Vec<Candidate> = Vec::new();
    for &(ci, s) in &scored_mid {
        seed_candidates(&dict[ci], s, mid, &mut set);
    }
    if set.is_empty() {
        return Err(EngineError::NoCandidates);
    }

    // Consumption order: middle, then alternate right, left.
    let mut order: Vec<(usize, bool)> = Vec::new();
    for k in 1..n {
        if mid + k < n {
            order.push((mid + k, true));
        }
        if mid >= k {
            order.push((mid - k, false));
        }
    }

    for (unit_idx, rightward) in order {
        let scored = score_unit(&units[unit_idx], unit_confidence_weight(unit_idx, n, cfg), cfg);
        let by_edge = index_by_edge(&scored, rightward);
        let mut extensions: Vec<Candidate> = Vec::new();
        for cand in &set {
            let matches = if rightward {
                if cand.hi_unit + 1 != unit_idx {
                    continue;
                }
                let k = cand.tp_keys.len();
                by_edge.get(&(cand.tp_keys[k - 2], cand.tp_keys[k - 1]))
            } else {
                if cand.lo_unit != unit_idx + 1 {
                    continue;
                }
                by_edge.get(&(cand.tp_keys[0], cand.tp_keys[1]))
            };
            let Some(matches) = matches else { continue };
            for &(ci, s) in matches {
                let (e1, e2, e3) = dict[ci].dots;
                let mut variants = Vec::new();
                if rightward {
                    append_edge(cand, e2, e3, &mut variants);
                } else {
                    prepend_edge(cand, e1, e2, &mut variants);
                }
                for mut next in variants {
                    if rightward {
                        next.tp_keys.push_back(e3);
                        next.hi_unit = unit_idx;
                    } else {
                        next.tp_keys.push_front(e1);
                        next.lo_unit = unit_idx;
                    }
                    next.confidence += s;
                    extensions.push(next);
                }
            }
        }
        set.extend(extensions);
        truncate_beam(&mut set, cfg.beam_width);
    }

    let need = required_units(n, cfg);
    Ok(set
        .into_iter()
        .filter(|c| c.consumed() >= need)
        .map(|c| CandidateEntry {
            keys: c.keys.iter().copied().collect(),
            passed_segments: (c.lo_unit, c.hi_unit + 1),
            confidence: c.confidence,
            complete: c.consumed() == n,
        })
        .collect())
}

fn candidate_segments(keys: &[u8]) -> Vec<Segment> {
    let pts: Vec<(i64, i64)> = keys.iter().map(|&k| key_position(k)).collect();
    segments_from_points(&pts).segments
}

/// Robust classification of a trajectory segment pair: crossing, apart, or
/// too close to call. A crossing within `margin` of a segment end, or a
/// miss by less than `margin`, flips freely under keypoint noise (pattern
/// T-contacts land exactly there), so such pairs must not disqualify
/// anyone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TrajCrossing {
    Crossing,
    Apart,
    Ambiguous,
}

fn classify_crossing(
    s1: ((f64, f64), (f64, f64)),
    s2: ((f64, f64), (f64, f64)),
    margin: f64,
) -> TrajCrossing {
    let r = (s1.1 .0 - s1.0 .0, s1.1 .1 - s1.0 .1);
    let s = (s2.1 .0 - s2.0 .0, s2.1 .1 - s2.0 .1);
    let len1 = r.0.hypot(r.1);
    let len2 = s.0.hypot(s.1);
    if crate::geom::proper_crossing_f64(s1, s2) {
        let denom = r.0 * s.1 - r.1 * s.0;
        let d = (s2.0 .0 - s1.0 .0, s2.0 .1 - s1.0 .1);
        let t = (d.0 * s.1 - d.1 * s.0) / denom;
        let u = (d.0 * r.1 - d.1 * r.0) / denom;
        let depth = (t.min(1.0 - t) * len1).min(u.min(1.0 - u) * len2);
        if depth < margin {
            TrajCrossing::Ambiguous
        } else {
            TrajCrossing::Crossing
        }
    } else if segment_distance(s1, s2) < margin {
        TrajCrossing::Ambiguous
    } else {
        TrajCrossing::Apart
    }
}

fn point_segment_distance(p: (f64, f64), s: ((f64, f64), (f64, f64))) -> f64 {
    let (a, b) = s;
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p.0 - a.0).hypot(p.1 - a.1);
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    (p.0 - (a.0 + t * dx)).hypot(p.1 - (a.1 + t * dy))
}

fn segment_distance(s1: ((f64, f64), (f64, f64)), s2: ((f64, f64), (f64, f64))) -> f64 {
    point_segment_distance(s1.0, s2)
        .min(point_segment_distance(s1.1, s2))
        .min(point_segment_distance(s2.0, s1))
        .min(point_segment_distance(s2.1, s1))
}

/// Keep only candidates whose pattern crossing structure matches the
/// trajectory's, gap by gap. Camera deformation never changes whether two
/// edges cross, so a robust mismatch disproves the candidate. `margin` is
/// the px slack below which a trajectory pair is too close to classify;
/// scale it with the simplification epsilon.
pub fn consistency_filter(
    candidates: Vec<CandidateEntry>,
    poly_segments: &[((f64, f64), (f64, f64))],
    margin: f64,
    cfg: &EngineConfig,
) -> Vec<CandidateEntry> {
    if !cfg.consistency_filter {
        return candidates;
    }
    let n_seg = poly_segments.len();
    candidates
        .into_iter()
        .filter(|cand| {
            let (lo, hi) = cand.passed_segments;
            let pat_segs = candidate_segments(&cand.keys);
            if pat_segs.len() != hi - lo + 1 {
                // A candidate that straightens a real turn cannot be
                // aligned edge-for-edge with the trajectory; discard it.
                return false;
            }
            let wlo = if cfg.exclude_ends { lo.max(1) } else { lo };
            let whi = if cfg.exclude_ends {
                hi.min(n_seg.saturating_sub(2))
            } else {
                hi
            };
            if whi < wlo {
                return true;
            }
            for d in 2..=7usize {
                if cfg.containment_match {
                    let pstr: String = (0..pat_segs.len().saturating_sub(d))
                        .map(|j| cross_char_pattern(&pat_segs, j, d))
                        .collect();
                    let tstr: String = (0..n_seg.saturating_sub(d))
                        .map(|i| cross_char_traj(poly_segments, i, d))
                        .collect();
                    if !pstr.is_empty() && !tstr.contains(&pstr) {
                        return false;
                    }
                } else {
                    if whi - wlo < d {
                        continue;
                    }
                    for i in wlo..=whi - d {
                        let p = cross_char_pattern(&pat_segs, i - lo, d);
                        let t =
                            classify_crossing(poly_segments[i], poly_segments[i + d], margin);
                        let mismatch = (p == 'T' && t == TrajCrossing::Apart)
                            || (p == 'F' && t == TrajCrossing::Crossing);
                        if mismatch {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .collect()
}

fn cross_char_pattern(segs: &[Segment], j: usize, d: usize) -> char {
    if proper_crossing(segs[j], segs[j + d]) {
        'T'
    } else {
        'F'
    }
}

fn cross_char_traj(segs: &[((f64, f64), (f64, f64))], i: usize, d: usize) -> char {
    if crate::geom::proper_crossing_f64(segs[i], segs[i + d]) {
        'T'
    } else {
        'F'
    }
}

/// One ranked guess.
#[derive(Debug, Clone, Serialize)]
pub struct GuessEntry {
    #[serde(serialize_with = "serialize_pattern")]
    pub pattern: Pattern,
    pub confidence: f64,
    pub rank: u32,
}

fn serialize_pattern<S: serde::Serializer>(p: &Pattern, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Guesses in descending confidence. Tied confidences share a rank and
/// are ordered by pattern text.
#[derive(Debug, Clone, Default, Serialize)]
pub struct GuessList {
    pub entries: Vec<GuessEntry>,
}

impl GuessList {
    pub fn rank_of(&self, pattern: &Pattern) -> Option<u32> {
        self.entries
            .iter()
            .find(|e| &e.pattern == pattern)
            .map(|e| e.rank)
    }

    pub fn truncated(&self, top: usize) -> GuessList {
        GuessList {
            entries: self.entries.iter().take(top).cloned().collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{}\t{}\t{}\n", e.rank, e.pattern, e.confidence));
        }
        out
    }
}

/// Confidences are quantized to 1e-9 before comparison so that rank and
/// ordering survive harmless float noise (e.g. uniformly scaled inputs).
fn quantize(conf: f64) -> f64 {
    (conf * 1e9).round() / 1e9
}

fn build_list(by_pattern: BTreeMap<String, f64>) -> GuessList {
    let mut items: Vec<(String, f64)> = by_pattern
        .into_iter()
        .map(|(p, c)| (p, quantize(c)))
        .collect();
    items.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut entries = Vec::with_capacity(items.len());
    let mut rank = 1u32;
    let mut prev_conf = f64::INFINITY;
    for (i, (text, conf)) in items.into_iter().enumerate() {
        if conf < prev_conf {
            rank = i as u32 + 1;
            prev_conf = conf;
        }
        entries.push(GuessEntry {
            pattern: text.parse().expect("ranked patterns are valid"),
            confidence: conf,
            rank,
        });
    }
    GuessList { entries }
}

/// Drop invalid hypotheses, deduplicate (highest confidence wins) and sort.
pub fn rank(candidates: Vec<CandidateEntry>) -> GuessList {
    let mut by_pattern: BTreeMap<String, f64> = BTreeMap::new();
    for cand in candidates {
        let keys: Vec<i64> = cand.keys.iter().map(|&k| k as i64).collect();
        let Ok(pattern) = validate_pattern(&keys) else {
            continue;
        };
        let e = by_pattern.entry(pattern.to_string()).or_insert(f64::NEG_INFINITY);
        if cand.confidence > *e {
            *e = cand.confidence;
        }
    }
    build_list(by_pattern)
}

/// Accumulate per-pattern confidence across lists and re-rank.
pub fn fuse(lists: &[GuessList]) -> GuessList {
    let mut by_pattern: BTreeMap<String, f64> = BTreeMap::new();
    for list in lists {
        for e in &list.entries {
            *by_pattern.entry(e.pattern.to_string()).or_insert(0.0) += e.confidence;
        }
    }
    build_list(by_pattern)
}

#[derive(Debug, Clone, Default)]
pub struct GuessConfig {
    pub engine: EngineConfig,
    pub check: CheckConfig,
    /// RDP threshold override; default is scale-relative.
    pub epsilon: Option<f64>,
}

impl GuessConfig {
    pub fn new() -> GuessConfig {
        GuessConfig::default()
    }
}

fn guess_one(t: &Trajectory, cfg: &GuessConfig) -> Result<GuessList, String> {
    match check_track(t, cfg.check) {
        CheckResult::Valid => {}
        CheckResult::Invalid(reason) => return Err(format!("track check failed: {reason:?}")),
    }
    let epsilon = cfg.epsilon.unwrap_or_else(|| default_epsilon(t));
    let poly = prune_shallow_vertices(&rdp_simplify(t, epsilon), &t.points, epsilon);
    let units = extract_units(&poly).map_err(|e| e.to_string())?;
    let candidates = generate_candidates(&units, &cfg.engine).map_err(|e| e.to_string())?;
    // Noise that survives simplification is bounded by epsilon, so the
    // crossing ambiguity margin scales with it.
    let filtered = consistency_filter(candidates, &poly.segments(), 0.75 * epsilon, &cfg.engine);
    Ok(rank(filtered))
}

/// Full pipeline over one or more keypoint trajectories of the same
/// drawing: per-trajectory candidate lists fused by confidence.
/// Trajectories failing the validity check are skipped; the reasons come
/// back alongside the list.
pub fn guess_detailed(
    trajectories: &[Trajectory],
    cfg: &GuessConfig,
) -> Result<(GuessList, Vec<String>), EngineError> {
    let mut lists = Vec::new();
    let mut skipped = Vec::new();
    for (i, t) in trajectories.iter().enumerate() {
        match guess_one(t, cfg) {
            Ok(list) => lists.push(list),
            Err(reason) => skipped.push(format!("trajectory {i}: {reason}")),
        }
    }
    if lists.is_empty() {
        return Err(EngineError::AllTrajectoriesInvalid);
    }
    Ok((fuse(&lists), skipped))
}

pub fn guess(trajectories: &[Trajectory], cfg: &GuessConfig) -> Result<GuessList, EngineError> {
    guess_detailed(trajectories, cfg).map(|(list, _)| list)
}
