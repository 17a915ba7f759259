//! Report assembly and rendering for `analyze`, `roots`, `core-theorem` and `lift`.
//!
//! Every report is built once as a serializable value; the text form is
//! rendered from that same value so both formats carry the same numbers.
//! Text labels deliberately contain no digits.

use std::fmt::Write as _;

use serde::Serialize;

use modpk_core::{
    cubic_roots_of_unity, enumerate_flt_roots_mod_p2, find_core_triplets, fst_extension_check, hensel_lift_poly_root,
    lift_flt_root, verify_core_theorem, CoreTheoremReport, EdsReport, FltRootPair, GroupStructure, PrimePowerModulus,
    Residue, Triplet,
};

use crate::error::{CliError, Result};
use crate::VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// Rendering options shared by all commands.
#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub signed: bool,
}

/// A residue in decimal, p-ary and (optionally) signed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueView {
    pub value: u64,
    pub padic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed: Option<i64>,
}

impl ResidueView {
    pub fn new(r: Residue, style: Style) -> Self {
        Self {
            value: r.value(),
            padic: r.to_padic().render(),
            signed: style.signed.then(|| r.signed()),
        }
    }

    fn text(&self) -> String {
        match self.signed {
            Some(s) => format!("{} [{}] ({})", self.value, self.padic, s),
            None => format!("{} [{}]", self.value, self.padic),
        }
    }
}

fn views(rs: impl IntoIterator<Item = Residue>, style: Style) -> Vec<ResidueView> {
    rs.into_iter().map(|r| ResidueView::new(r, style)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulusView {
    pub p: u64,
    pub k: u32,
    pub m: u64,
}

impl From<PrimePowerModulus> for ModulusView {
    fn from(m: PrimePowerModulus) -> Self {
        Self {
            p: m.p(),
            k: m.k(),
            m: m.m(),
        }
    }
}

/// Output document: tool identification, inputs, and the command's report.
#[derive(Debug, Serialize)]
pub struct Document<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub params: serde_json::Value,
    pub report: T,
}

impl<T: Serialize + RenderText> Document<T> {
    pub fn new(command: &'static str, params: serde_json::Value, report: T) -> Self {
        Self {
            tool: "modpk",
            version: VERSION,
            command,
            params,
            report,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("{} {} {}", self.tool, self.version, self.command);
                if let serde_json::Value::Object(map) = &self.params {
                    for (key, value) in map {
                        let _ = write!(s, " {key}={value}");
                    }
                }
                s.push('\n');
                self.report.render_text(&mut s);
                s
            }
        }
    }
}

pub trait RenderText {
    fn render_text(&self, out: &mut String);
}

fn row(out: &mut String, label: &str, base: u64, items: &[ResidueView]) {
    let join = |f: &dyn Fn(&ResidueView) -> String| items.iter().map(f).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "{label} (decimal): {}", join(&|r| r.value.to_string()));
    let _ = writeln!(out, "{label} (base {base}): {}", join(&|r| r.padic.clone()));
    if items.iter().all(|r| r.signed.is_some()) && !items.is_empty() {
        let _ = writeln!(
            out,
            "{label} (signed): {}",
            join(&|r| r.signed.unwrap_or_default().to_string())
        );
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdsView {
    pub lhs: ResidueView,
    pub rhs: ResidueView,
    pub holds: bool,
}

impl EdsView {
    fn new(e: &EdsReport, style: Style) -> Self {
        Self {
            lhs: ResidueView::new(e.lhs, style),
            rhs: ResidueView::new(e.rhs, style),
            holds: e.holds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// `a * b = 1`: a nontrivial cube root of 1 and its inverse.
    Cubic,
    /// Derived from a proper core triplet.
    Triplet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootPairView {
    pub a: ResidueView,
    pub b: ResidueView,
    pub kind: PairKind,
    pub eds: EdsView,
}

impl RootPairView {
    fn new(pair: &FltRootPair, style: Style) -> Result<Self> {
        let eds = modpk_core::eds_check(pair.a, pair.b)?;
        Ok(Self {
            a: ResidueView::new(pair.a, style),
            b: ResidueView::new(pair.b, style),
            kind: if pair.is_inverse_pair() {
                PairKind::Cubic
            } else {
                PairKind::Triplet
            },
            eds: EdsView::new(&eds, style),
        })
    }

    fn text(&self) -> String {
        let kind = match self.kind {
            PairKind::Cubic => "cubic",
            PairKind::Triplet => "triplet",
        };
        format!(
            "({}, {}) {kind}, EDS {}: lhs {} rhs {}",
            self.a.text(),
            self.b.text(),
            verdict(self.eds.holds),
            self.eds.lhs.text(),
            self.eds.rhs.text()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FltRootsView {
    /// `p^2`, the precision at which roots are enumerated.
    pub modulus: u64,
    pub pairs: Vec<RootPairView>,
}

impl FltRootsView {
    fn build(p: u64, style: Style) -> Result<Self> {
        let pairs = enumerate_flt_roots_mod_p2(p)?;
        Ok(Self {
            modulus: PrimePowerModulus::new(p, 2)?.m(),
            pairs: pairs
                .iter()
                .map(|r| RootPairView::new(r, style))
                .collect::<Result<_>>()?,
        })
    }

    fn render(&self, out: &mut String) {
        if self.pairs.is_empty() {
            let _ = writeln!(out, "no FLT roots mod {}", self.modulus);
        } else {
            let _ = writeln!(out, "FLT roots mod {}:", self.modulus);
            for pair in &self.pairs {
                let _ = writeln!(out, "  {}", pair.text());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorView {
    pub d: u64,
    pub sum: ResidueView,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreTheoremView {
    pub modulus: ModulusView,
    pub checks: Vec<DivisorView>,
    /// Sum of the trivial subgroup, reported separately from the checks.
    pub trivial_sum: ResidueView,
    pub all_pass: bool,
}

impl CoreTheoremView {
    pub fn new(report: &CoreTheoremReport, style: Style) -> Self {
        Self {
            modulus: report.modulus.into(),
            checks: report
                .checks
                .iter()
                .map(|c| DivisorView {
                    d: c.d,
                    sum: ResidueView::new(c.sum, style),
                    passes: c.passes,
                })
                .collect(),
            trivial_sum: ResidueView::new(report.trivial_sum, style),
            all_pass: report.all_pass(),
        }
    }
}

impl RenderText for CoreTheoremView {
    fn render_text(&self, out: &mut String) {
        let m = &self.modulus;
        let _ = writeln!(out, "core subgroup sums mod {} (p={} k={}):", m.m, m.p, m.k);
        for c in &self.checks {
            let status = if c.passes { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  order {}: sum {} {status}", c.d, c.sum.text());
        }
        let _ = writeln!(out, "  trivial subgroup: sum {} (excluded)", self.trivial_sum.text());
        let _ = writeln!(
            out,
            "core theorem: {}",
            if self.all_pass { "all pass" } else { "FAILED" }
        );
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripletView {
    pub a: ResidueView,
    pub b: ResidueView,
    pub c: ResidueView,
}

impl TripletView {
    pub fn new(t: &Triplet, style: Style) -> Self {
        Self {
            a: ResidueView::new(t.a, style),
            b: ResidueView::new(t.b, style),
            c: ResidueView::new(t.c, style),
        }
    }

    pub fn text(&self) -> String {
        format!("({}, {}, {})", self.a.text(), self.b.text(), self.c.text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripletSummaryView {
    pub proper_count: usize,
    pub fixed_point_count: usize,
    pub proper: Vec<TripletView>,
    pub fixed_points: Vec<ResidueView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub modulus: ModulusView,
    pub group_order: u64,
    pub generator: ResidueView,
    pub core_order: u64,
    pub core_generator: ResidueView,
    pub extension_order: u64,
    pub extension_generator: ResidueView,
    pub fermat_order: u64,
    /// `h, h^2, ..., h^(p-1) = 1`.
    pub core: Vec<ResidueView>,
    pub fst_extension_holds: bool,
    pub cubic_roots: Option<Vec<ResidueView>>,
    pub flt_roots: FltRootsView,
    pub core_theorem: CoreTheoremView,
    /// Core triplets at the report's precision; absent for `k = 1`.
    pub triplets: Option<TripletSummaryView>,
}

pub fn analyze(p: u64, k: u32, style: Style) -> Result<AnalysisReport> {
    let modulus = PrimePowerModulus::new(p, k)?;
    let group = GroupStructure::new(modulus);
    let mut core: Vec<Residue> = group.core_elements().elements().to_vec();
    core.rotate_left(1);
    let cubic_roots = match cubic_roots_of_unity(modulus) {
        Ok(t) => Some(views(t.roots, style)),
        Err(modpk_core::Error::NoCubicRoots(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let triplets = if k >= 2 {
        let found = find_core_triplets(modulus)?;
        Some(TripletSummaryView {
            proper_count: found.proper.len(),
            fixed_point_count: found.fixed_points.len(),
            proper: found.proper.iter().map(|t| TripletView::new(t, style)).collect(),
            fixed_points: views(found.fixed_points, style),
        })
    } else {
        None
    };
    Ok(AnalysisReport {
        modulus: modulus.into(),
        group_order: group.group_order,
        generator: ResidueView::new(group.generator, style),
        core_order: group.core_order,
        core_generator: ResidueView::new(group.core_generator, style),
        extension_order: group.extension_order,
        extension_generator: ResidueView::new(group.extension_generator, style),
        fermat_order: group.fermat_order,
        core: views(core, style),
        fst_extension_holds: fst_extension_check(modulus),
        cubic_roots,
        flt_roots: FltRootsView::build(p, style)?,
        core_theorem: CoreTheoremView::new(&verify_core_theorem(modulus), style),
        triplets,
    })
}

impl RenderText for AnalysisReport {
    fn render_text(&self, out: &mut String) {
        let m = &self.modulus;
        let _ = writeln!(out, "modulus: p={} k={} m={}", m.p, m.k, m.m);
        let _ = writeln!(
            out,
            "units group: order {}, generator {}",
            self.group_order,
            self.generator.text()
        );
        let _ = writeln!(
            out,
            "core: order {}, generator {}",
            self.core_order,
            self.core_generator.text()
        );
        let _ = writeln!(
            out,
            "extension: order {}, generator {}",
            self.extension_order,
            self.extension_generator.text()
        );
        let _ = writeln!(out, "pth powers: order {}", self.fermat_order);
        row(out, "core", m.p, &self.core);
        let _ = writeln!(out, "fixed points of x -> x^p: {}", verdict(self.fst_extension_holds));
        match &self.cubic_roots {
            Some(roots) => row(out, "cubic roots", m.p, roots),
            None => out.push_str("cubic roots: none\n"),
        }
        self.flt_roots.render(out);
        self.core_theorem.render_text(out);
        match &self.triplets {
            Some(t) => {
                let _ = writeln!(
                    out,
                    "core triplets: proper {}, fixed points {}",
                    t.proper_count, t.fixed_point_count
                );
                for tr in &t.proper {
                    let _ = writeln!(out, "  {}", tr.text());
                }
                if !t.fixed_points.is_empty() {
                    row(out, "fixed points", m.p, &t.fixed_points);
                }
            }
            None => out.push_str("core triplets: not applicable at this precision\n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedRootView {
    pub a: ResidueView,
    pub b: ResidueView,
    pub b_in_core: bool,
    pub b_is_pth_power: bool,
    pub eds: EdsView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootsReport {
    pub modulus: ModulusView,
    pub flt_roots: FltRootsView,
    /// The same pairs carried to precision `k` when `k > 2`.
    pub lifted: Option<Vec<LiftedRootView>>,
}

pub fn roots(p: u64, k: u32, style: Style) -> Result<RootsReport> {
    let modulus = PrimePowerModulus::new(p, k)?;
    let flt_roots = FltRootsView::build(p, style)?;
    let lifted = if k > 2 {
        let pairs = enumerate_flt_roots_mod_p2(p)?;
        let mut out = Vec::with_capacity(pairs.len());
        for pair in &pairs {
            let l = lift_flt_root(pair, k)?;
            out.push(LiftedRootView {
                a: ResidueView::new(l.a, style),
                b: ResidueView::new(l.b, style),
                b_in_core: l.b_in_core,
                b_is_pth_power: l.b_is_pth_power,
                eds: EdsView::new(&l.eds, style),
            });
        }
        Some(out)
    } else {
        None
    };
    Ok(RootsReport {
        modulus: modulus.into(),
        flt_roots,
        lifted,
    })
}

impl RenderText for RootsReport {
    fn render_text(&self, out: &mut String) {
        self.flt_roots.render(out);
        if let Some(lifted) = &self.lifted {
            let _ = writeln!(out, "lifted to mod {}:", self.modulus.m);
            for l in lifted {
                let _ = writeln!(
                    out,
                    "  ({}, {}) second term {}, {}, EDS {}: lhs {} rhs {}",
                    l.a.text(),
                    l.b.text(),
                    if l.b_in_core { "in core" } else { "outside core" },
                    if l.b_is_pth_power {
                        "pth power"
                    } else {
                        "not a pth power"
                    },
                    verdict(l.eds.holds),
                    l.eds.lhs.text(),
                    l.eds.rhs.text()
                );
            }
        }
    }
}

pub fn core_theorem(p: u64, k: u32, style: Style) -> Result<CoreTheoremView> {
    let modulus = PrimePowerModulus::new(p, k)?;
    Ok(CoreTheoremView::new(&verify_core_theorem(modulus), style))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub from: ModulusView,
    pub to: ModulusView,
    /// Cubic roots at the starting precision.
    pub seed: Vec<ResidueView>,
    /// `1, a, a^2` at the target precision, ascending.
    pub roots: Vec<ResidueView>,
    pub sum: ResidueView,
    pub zero_sum: bool,
    /// `a + a^-1`.
    pub one_complement: ResidueView,
    pub one_complement_holds: bool,
}

pub fn lift(p: u64, from_k: u32, to_k: u32, style: Style) -> Result<LiftReport> {
    if to_k < from_k {
        return Err(CliError::Usage(format!(
            "target precision {to_k} is below starting precision {from_k}"
        )));
    }
    let from = PrimePowerModulus::new(p, from_k)?;
    let to = PrimePowerModulus::new(p, to_k)?;
    let seed = cubic_roots_of_unity(from)?;
    let a = hensel_lift_poly_root(&[1, 1, 1], seed.a, to_k)?;
    let mut roots = [to.one(), a, a.pow_mod(2)];
    roots.sort_unstable_by_key(Residue::value);
    let sum = roots.iter().try_fold(to.residue(0), |acc, r| acc.add_mod(*r))?;
    let one_complement = a.add_mod(a.inv_mod()?)?;
    Ok(LiftReport {
        from: from.into(),
        to: to.into(),
        seed: views(seed.roots, style),
        roots: views(roots, style),
        sum: ResidueView::new(sum, style),
        zero_sum: sum.value() == 0,
        one_complement: ResidueView::new(one_complement, style),
        one_complement_holds: one_complement == to.minus_one(),
    })
}

impl RenderText for LiftReport {
    fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "cubic roots mod {}:", self.from.m);
        row(out, "  seed", self.from.p, &self.seed);
        let _ = writeln!(out, "lifted to mod {}:", self.to.m);
        row(out, "  roots", self.to.p, &self.roots);
        let _ = writeln!(out, "sum: {} zero sum {}", self.sum.text(), verdict(self.zero_sum));
        let _ = writeln!(
            out,
            "a + inverse: {} one-complement {}",
            self.one_complement.text(),
            verdict(self.one_complement_holds)
        );
    }
}
