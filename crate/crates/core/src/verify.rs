//! Machine verification suites. Each suite runs for one `n` and returns a
//! [`Report`] listing every individual identity it checked.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyc;
use crate::error::Result;
use crate::line_elements::{is_line_element, line_realize, span_block, span_rank, witness_target, LineElt, Membership};
use crate::localization::{LocClass, Localization, UClass};
use crate::par::{self, Execution};
use crate::presentation::{
    augmentation_via_gamma, generation_rank, presentation_relations, u_presentation_relations,
    verify_resolution_isomorphism, RelationReport,
};
use crate::rat::Rat;
use crate::sector::{sector_dim, sector_x_inverse, SectorClass};
use crate::virtual_ring::{euler_table, virtual_augmentation, EulerCase, KClass, VirtualRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ProductOracle,
    AdamsOracle,
    PsiRing,
    LineElements,
    Span,
    Presentation,
    Resolution,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ProductOracle,
        Suite::AdamsOracle,
        Suite::PsiRing,
        Suite::LineElements,
        Suite::Span,
        Suite::Presentation,
        Suite::Resolution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ProductOracle => "product-oracle",
            Suite::AdamsOracle => "adams-oracle",
            Suite::PsiRing => "psi-ring",
            Suite::LineElements => "line-elements",
            Suite::Span => "span",
            Suite::Presentation => "presentation",
            Suite::Resolution => "resolution",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<Suite>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err("no suite given".into());
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of: {}, all)", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(id: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Check { id: id.into(), status, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl From<RelationReport> for Check {
    fn from(r: RelationReport) -> Check {
        Check { id: r.id, status: if r.equal { Status::Pass } else { Status::Fail }, lhs: r.lhs, rhs: r.rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub n: u32,
    pub checks: Vec<Check>,
    /// Wall-clock milliseconds; only recorded on request so reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Checks whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRun {
    pub reports: Vec<Report>,
}

impl VerifyRun {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn check_count(&self) -> usize {
        self.reports.iter().map(|r| r.checks.len()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_min: u32,
    pub n_max: u32,
    pub suites: Vec<Suite>,
    /// Largest Adams index; `None` means `2n`.
    pub k_max: Option<u32>,
    pub execution: Execution,
    pub timing: bool,
    /// Random line elements per `n` in the line-element suite.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            n_min: 2,
            n_max: 4,
            suites: Suite::ALL.to_vec(),
            k_max: None,
            execution: Execution::default(),
            timing: false,
            samples: 20,
            seed: 0x5eed,
        }
    }
}

/// Runs every selected suite for every `n` in range; reports are ordered by `n`, then suite.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyRun> {
    let mut reports = Vec::new();
    for n in opts.n_min..=opts.n_max {
        let v = Verifier::new(n, opts)?;
        for &suite in &opts.suites {
            reports.push(v.run(suite, opts.timing));
        }
    }
    Ok(VerifyRun { reports })
}

/// The Euler table with every complementary entry (`m₁ + m₂ = n`) replaced by
/// the generic factor `1 - x^{-1}`. Used as a negative control.
pub fn perturbed_euler_table(n: u32) -> Vec<Vec<crate::virtual_ring::EulerFactor>> {
    let mut table = euler_table(n);
    for row in &mut table {
        for e in row.iter_mut() {
            if e.case == EulerCase::Complementary {
                e.value = SectorClass::one(n, e.target).sub(&sector_x_inverse(n, e.target));
            }
        }
    }
    table
}

/// Suite runner for one `n`, over a possibly non-standard [`VirtualRing`].
pub struct Verifier {
    n: u32,
    ring: VirtualRing,
    loc: Localization,
    exec: Execution,
    k_max: u32,
    samples: usize,
    seed: u64,
    transported: OnceLock<Vec<Vec<LocClass>>>,
}

fn loc_labels(n: u32) -> Vec<String> {
    (0..(n * n + 1) as usize).map(|i| LocClass::label(n, i)).collect()
}

fn monomial_labels(n: u32) -> Vec<String> {
    (0..n).flat_map(|m| (0..sector_dim(n, m)).map(move |j| SectorClass::monomial_label(m, j))).collect()
}

fn pairs(size: usize, ordered: bool) -> Vec<(usize, usize)> {
    (0..size).flat_map(|i| (if ordered { 0 } else { i }..size).map(move |j| (i, j))).collect()
}

impl Verifier {
    pub fn new(n: u32, opts: &VerifyOptions) -> Result<Verifier> {
        Self::with_ring(VirtualRing::new(n)?, opts)
    }

    pub fn with_ring(ring: VirtualRing, opts: &VerifyOptions) -> Result<Verifier> {
        let n = ring.n();
        Ok(Verifier {
            n,
            loc: Localization::new(n)?,
            ring,
            exec: opts.execution,
            k_max: opts.k_max.unwrap_or(2 * n).max(1),
            samples: opts.samples,
            seed: opts.seed,
            transported: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn run(&self, suite: Suite, timing: bool) -> Report {
        let start = Instant::now();
        let checks = match suite {
            Suite::ProductOracle => self.product_oracle(),
            Suite::AdamsOracle => self.adams_oracle(),
            Suite::PsiRing => self.psi_ring(),
            Suite::LineElements => self.line_elements(),
            Suite::Span => self.span(),
            Suite::Presentation => self.presentation(),
            Suite::Resolution => self.resolution(),
        };
        let timing_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        Report { suite, n: self.n, checks, timing_ms }
    }

    /// `Γ(Γ⁻¹(e_i) * Γ⁻¹(e_j))` for every localized basis pair, using this verifier's ring.
    fn transported_table(&self) -> &Vec<Vec<LocClass>> {
        self.transported.get_or_init(|| {
            let size = (self.n * self.n + 1) as usize;
            let rows: Vec<usize> = (0..size).collect();
            par::map(self.exec, &rows, |&i| {
                (0..size)
                    .map(|j| {
                        let p = self.ring.mul(self.loc.inverse_image(i), self.loc.inverse_image(j));
                        self.loc.gamma(&p)
                    })
                    .collect()
            })
        })
    }

    /// `Σ a_p b_q T[p][q]` for the transported table `T`.
    fn transported_mul(&self, a: &LocClass, b: &LocClass) -> LocClass {
        let t = self.transported_table();
        let mut out = LocClass::zero(self.n);
        for (p, x) in a.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (q, y) in b.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out = out.add(&t[p][q].scale(&(x * y)));
            }
        }
        out
    }

    fn product_oracle(&self) -> Vec<Check> {
        let n = self.n;
        let labels = loc_labels(n);
        let size = labels.len();
        let mut out = Vec::new();
        let basis = LocClass::basis_vectors(n);
        out.extend(par::map(self.exec, &basis, |b| {
            let i = b.coords().iter().position(|c| !c.is_zero()).expect("basis vector");
            Check::compare(format!("gamma-inverse[{}]", labels[i]), &self.loc.gamma(self.loc.inverse_image(i)), b)
        }));
        let mono = KClass::monomial_basis(n);
        let mlabels = monomial_labels(n);
        let idx: Vec<usize> = (0..mono.len()).collect();
        out.extend(par::map(self.exec, &idx, |&i| {
            let back = self.loc.gamma_inverse(&self.loc.gamma(&mono[i]));
            Check::compare(format!("inverse-gamma[{}]", mlabels[i]), &back, &mono[i])
        }));
        let table = self.transported_table();
        out.extend(par::map(self.exec, &pairs(size, true), |&(i, j)| {
            Check::compare(
                format!("product[{}*{}]", labels[i], labels[j]),
                &self.loc.basis_product(i, j),
                &table[i][j],
            )
        }));
        out.extend(par::map(self.exec, &pairs(size, true), |&(i, j)| {
            Check::compare(
                format!("loc-mul[{}*{}]", labels[i], labels[j]),
                &self.loc.mul(&basis[i], &basis[j]),
                &self.loc.basis_product(i, j),
            )
        }));
        out
    }

    fn adams_oracle(&self) -> Vec<Check> {
        let n = self.n;
        let labels = loc_labels(n);
        let size = labels.len();
        let ks: Vec<u32> = (1..=self.k_max).collect();
        let mut out = par::flat_map(self.exec, &ks, |&k| {
            (0..size)
                .map(|i| {
                    let expect = self.loc.gamma(&self.ring.adams(self.loc.inverse_image(i), k));
                    Check::compare(format!("loc-adams[k={k}][{}]", labels[i]), &self.loc.basis_adams(i, k), &expect)
                })
                .collect()
        });
        out.extend(par::flat_map(self.exec, &ks, |&k| {
            UClass::basis_vectors(n)
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let pulled = self.loc.gamma_inverse(&self.loc.from_u_basis(b));
                    let expect = self.loc.to_u_basis(&self.loc.gamma(&self.ring.adams(&pulled, k)));
                    Check::compare(format!("u-adams[k={k}][{}]", UClass::label(n, i)), &self.loc.u_adams(b, k), &expect)
                })
                .collect()
        }));
        // ψ̃^k must also be multiplicative for the transported product.
        let hom_ks: Vec<u32> = (2..=self.k_max.min(4)).collect();
        let tasks: Vec<(u32, usize, usize)> =
            hom_ks.iter().flat_map(|&k| pairs(size, false).into_iter().map(move |(i, j)| (k, i, j))).collect();
        let table = self.transported_table();
        out.extend(par::map(self.exec, &tasks, |&(k, i, j)| {
            let lhs = self.loc.adams(&table[i][j], k);
            let rhs = self.transported_mul(&self.loc.basis_adams(i, k), &self.loc.basis_adams(j, k));
            Check::compare(format!("adams-mul[k={k}][{}*{}]", labels[i], labels[j]), &lhs, &rhs)
        }));
        out
    }

    fn psi_ring(&self) -> Vec<Check> {
        let n = self.n;
        let ring = &self.ring;
        let mono = KClass::monomial_basis(n);
        let labels = monomial_labels(n);
        let size = mono.len();
        let one = KClass::one(n);
        let mut out = Vec::new();
        for (a, l) in mono.iter().zip(&labels) {
            out.push(Check::compare(format!("adams-identity[{l}]"), &ring.adams(a, 1), a));
            out.push(Check::compare(format!("unit-left[{l}]"), &ring.mul(&one, a), a));
            out.push(Check::compare(format!("unit-right[{l}]"), &ring.mul(a, &one), a));
        }
        let comp: Vec<(u32, u32)> = (1..=4).flat_map(|k| (1..=4).map(move |l| (k, l))).collect();
        out.extend(par::flat_map(self.exec, &comp, |&(k, l)| {
            mono.iter()
                .zip(&labels)
                .map(|(a, lab)| {
                    Check::compare(
                        format!("adams-compose[{k},{l}][{lab}]"),
                        &ring.adams(&ring.adams(a, l), k),
                        &ring.adams(a, k * l),
                    )
                })
                .collect()
        }));
        let tasks: Vec<(u32, usize, usize)> =
            (1..=4).flat_map(|k| pairs(size, false).into_iter().map(move |(i, j)| (k, i, j))).collect();
        out.extend(par::map(self.exec, &tasks, |&(k, i, j)| {
            let (a, b) = (&mono[i], &mono[j]);
            Check::compare(
                format!("adams-hom[k={k}][{}*{}]", labels[i], labels[j]),
                &ring.adams(&ring.mul(a, b), k),
                &ring.mul(&ring.adams(a, k), &ring.adams(b, k)),
            )
        }));
        for k in 1..=6u32.max(self.k_max) {
            for (a, l) in mono.iter().zip(&labels) {
                let eps = virtual_augmentation(a);
                out.push(Check::compare(
                    format!("augmentation-adams[k={k}][{l}]"),
                    &virtual_augmentation(&ring.adams(a, k)),
                    &eps,
                ));
                out.push(Check::compare(format!("adams-augmentation[k={k}][{l}]"), &ring.adams(&eps, k), &eps));
            }
        }
        out.extend(par::map(self.exec, &pairs(size, true), |&(i, j)| {
            Check::compare(
                format!("commutative[{}*{}]", labels[i], labels[j]),
                &ring.mul(&mono[i], &mono[j]),
                &ring.mul(&mono[j], &mono[i]),
            )
        }));
        if n <= 4 {
            let triples: Vec<(usize, usize, usize)> =
                pairs(size, true).into_iter().flat_map(|(i, j)| (0..size).map(move |k| (i, j, k))).collect();
            out.extend(par::map(self.exec, &triples, |&(i, j, k)| {
                let (a, b, c) = (&mono[i], &mono[j], &mono[k]);
                Check::compare(
                    format!("associative[{}*{}*{}]", labels[i], labels[j], labels[k]),
                    &ring.mul(&ring.mul(a, b), c),
                    &ring.mul(a, &ring.mul(b, c)),
                )
            }));
        }
        out
    }

    fn sample_line_elements(&self) -> Vec<LineElt> {
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        (0..self.samples)
            .map(|_| {
                let f: Vec<i64> = (0..n).map(|_| rng.gen_range(0..n as i64)).collect();
                let beta = (0..n)
                    .map(|_| {
                        let coeffs = (0..n).map(|_| Rat::new(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect();
                        Cyc::from_coeffs(n, coeffs)
                    })
                    .collect();
                LineElt::new(n, &f, beta).expect("sampled parameters have length n")
            })
            .collect()
    }

    fn line_elements(&self) -> Vec<Check> {
        let n = self.n;
        let loc = &self.loc;
        let k_max = self.k_max.max(2);
        let mut gens: Vec<(String, LineElt)> = Vec::new();
        for i in 0..n {
            gens.push((format!("sigma[{i}]"), LineElt::sigma(n, i)));
        }
        for j in 0..n {
            gens.push((format!("nu[{j}]"), LineElt::nu(n, j)));
        }
        let samples = self.sample_line_elements();
        for (s, l) in samples.iter().enumerate() {
            gens.push((format!("sample[{s}]"), l.clone()));
        }
        let mut out = par::flat_map(self.exec, &gens, |(name, l)| {
            let real = line_realize(l);
            let mut checks = Vec::new();
            let mut power = real.clone();
            for k in 2..=k_max {
                power = power.mul(&real);
                checks.push(Check::compare(format!("power-law[k={k}][{name}]"), &loc.u_adams(&real, k), &power));
            }
            let got = is_line_element(loc, &real, k_max);
            checks.push(Check::compare(format!("classify[{name}]"), &MembershipDisplay(got), &MembershipDisplay(Membership::Line(l.clone()))));
            let inv = line_realize(&l.inverse());
            checks.push(Check::compare(format!("inverse[{name}]"), &real.mul(&inv), &UClass::one(n)));
            checks
        });
        // Virtual-side power law for the generators, in K(IP(1,n)) itself.
        let generators = &gens[..2 * n as usize];
        out.extend(par::flat_map(self.exec, generators, |(name, l)| {
            let k_class = loc.gamma_inverse(&loc.from_u_basis(&line_realize(l)));
            let mut power = k_class.clone();
            let mut checks = Vec::new();
            for k in 2..=k_max {
                power = self.ring.mul(&power, &k_class);
                checks.push(Check::compare(
                    format!("virtual-power-law[k={k}][{name}]"),
                    &self.ring.adams(&k_class, k),
                    &power,
                ));
            }
            checks
        }));
        let pairs: Vec<(usize, usize)> = (0..gens.len()).map(|i| (i, (i * 7 + 3) % gens.len())).collect();
        out.extend(par::map(self.exec, &pairs, |&(i, j)| {
            let (a, b) = (&gens[i].1, &gens[j].1);
            let via_loc = loc.to_u_basis(&loc.mul(&loc.from_u_basis(&line_realize(a)), &loc.from_u_basis(&line_realize(b))));
            Check::compare(format!("group-law[{}*{}]", gens[i].0, gens[j].0), &line_realize(&a.mul(b)), &via_loc)
        }));
        out.extend(par::flat_map(self.exec, &samples.iter().enumerate().collect::<Vec<_>>(), |&(s, l)| {
            let k_class = loc.gamma_inverse(&loc.from_u_basis(&line_realize(l)));
            let lambdas = self.ring.lambda_sequence(&k_class, 3);
            let zero = KClass::zero(n);
            vec![
                Check::compare(format!("lambda[1][sample[{s}]]"), &lambdas[1], &k_class),
                Check::compare(format!("lambda[2][sample[{s}]]"), &lambdas[2], &zero),
                Check::compare(format!("lambda[3][sample[{s}]]"), &lambdas[3], &zero),
            ]
        }));
        let alpha_zero = line_realize(&LineElt::sigma(n, 0)).sub(&UClass::unit00(n));
        let doubled = UClass::one(n).scale(&Cyc::from_int(n, 2));
        for (id, a) in [("reject[alpha=0]", alpha_zero), ("reject[2*1]", doubled)] {
            let got = is_line_element(loc, &a, k_max);
            out.push(Check {
                id: id.into(),
                status: if got.is_line() { Status::Fail } else { Status::Pass },
                lhs: MembershipDisplay(got).to_string(),
                rhs: "not a line element".into(),
            });
        }
        out
    }

    fn span(&self) -> Vec<Check> {
        let n = self.n;
        let mut out = Vec::new();
        let s = match span_rank(n) {
            Ok(s) => s,
            Err(e) => {
                return vec![Check { id: "rank[A]".into(), status: Status::Fail, lhs: e.to_string(), rhs: String::new() }]
            }
        };
        out.push(Check::compare("rank[A]", &s.rank, &((n * (n - 1)) as usize)));
        let b = span_block(n);
        let size = (n - 1) as usize;
        for r in 0..size {
            for c in 0..size {
                let mut sq = Cyc::zero(n);
                for j in 0..size {
                    sq += &(&b[r][j] * &b[j][c]);
                }
                let expect = if (r + c + 2) % n as usize == 0 { 2 * n } else { n };
                out.push(Check::compare(format!("block-square[{},{}]", r + 1, c + 1), &sq, &Cyc::from_int(n, expect as i64)));
            }
        }
        out.push(Check::compare("witness-count", &s.witnesses.len(), &((n * n + 1) as usize)));
        let idx: Vec<usize> = (0..s.witnesses.len()).collect();
        out.extend(par::map(self.exec, &idx, |&i| {
            let w = &s.witnesses[i];
            Check::compare(format!("witness[{}]", w.target), &w.evaluate(n), &witness_target(n, i))
        }));
        out
    }

    fn presentation(&self) -> Vec<Check> {
        let n = self.n;
        let loc = &self.loc;
        let mut out: Vec<Check> = presentation_relations(loc).into_iter().map(Check::from).collect();
        out.extend(u_presentation_relations(loc).into_iter().map(Check::from));
        let g = generation_rank(n, n + 1);
        out.push(Check {
            id: format!("generation-rank[degree<={}]", g.max_degree),
            status: if g.rank == g.dimension { Status::Pass } else { Status::Fail },
            lhs: format!("rank {} after {} monomials", g.rank, g.examined),
            rhs: format!("dimension {}", g.dimension),
        });
        let x = LocClass::x00(n);
        let mut p = x.clone();
        for k in 1..=10i64 {
            if k > 1 {
                p = loc.mul(&p, &x);
            }
            let expect = x.scale(&Cyc::from_int(n, k)).sub(&LocClass::unit_at(n, 0, 0).scale(&Cyc::from_int(n, k - 1)));
            out.push(Check::compare(format!("x00-power[{k}]"), &p, &expect));
        }
        out
    }

    fn resolution(&self) -> Vec<Check> {
        let n = self.n;
        let mut out: Vec<Check> =
            verify_resolution_isomorphism(&self.loc, self.k_max).into_iter().map(Check::from).collect();
        let mono = KClass::monomial_basis(n);
        for (a, l) in mono.iter().zip(monomial_labels(n)) {
            out.push(Check::compare(
                format!("augmentation-gamma[{l}]"),
                &augmentation_via_gamma(&self.loc, a),
                &self.loc.gamma(&virtual_augmentation(a)),
            ));
        }
        out
    }
}

/// Comparable rendering of a [`Membership`] for reports.
struct MembershipDisplay(Membership);

impl PartialEq for MembershipDisplay {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl fmt::Display for MembershipDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Membership::Line(l) => write!(f, "line element {l}"),
            Membership::NotInvertible => f.write_str("not invertible"),
            Membership::PowerLawFails(k) => write!(f, "power law fails at k = {k}"),
            Membership::NoParameters => f.write_str("no (f; beta) parameters"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOptions {
        VerifyOptions { n_min: 2, n_max: 3, ..VerifyOptions::default() }
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 7);
        assert_eq!(Suite::parse_list("span, psi-ring").unwrap(), vec![Suite::PsiRing, Suite::Span]);
        assert!(Suite::parse_list("bogus").is_err());
        assert_eq!(serde_json::to_string(&Suite::ProductOracle).unwrap(), "\"product-oracle\"");
    }

    #[test]
    fn small_run_passes() {
        let run = run_verify(&opts()).unwrap();
        for r in &run.reports {
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{} n={}: {:?}", r.suite, r.n, bad.first());
        }
    }

    #[test]
    fn perturbed_ring_is_caught() {
        let n = 3;
        let ring = VirtualRing::with_euler_table(n, perturbed_euler_table(n)).unwrap();
        let v = Verifier::with_ring(ring, &opts()).unwrap();
        assert!(!v.run(Suite::ProductOracle, false).passed());
        assert!(!v.run(Suite::AdamsOracle, false).passed());
    }
}
