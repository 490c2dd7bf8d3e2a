//! Acceptance run: one line per criterion.
//!
//! Every criterion is a list of named checks. A criterion passes when all of
//! its checks agree with the expected outcome. Checks listed in `KNOWN` are
//! expected to disagree; the line still reports FAIL for them, and the test
//! only fails if the set of disagreements differs from that list. Corpus
//! manifest claims are checked as well.

use skewhilbert::axioms::{self, clause_holds, sectional_pseudocomplement};
use skewhilbert::codec::parse_set;
use skewhilbert::congruence::{self, phi, CongMode, FilterKind, Partition};
use skewhilbert::constructions as cons;
use skewhilbert::corpus;
use skewhilbert::search::{self, brute_force_models, count_models, enumerate_models, SearchSpec};
use skewhilbert::structure::induced_order;
use skewhilbert::term::{self, builtin, ideal_closure_check, IdealFamily, IdentityMode, MaltsevTerm, Term};
use skewhilbert::{AxiomSystem as A, ElemSet, FinStructure};

/// Checks whose expected outcome the computation does not reproduce.
const KNOWN: &[(u8, &str)] = &[(5, "fig7 1-class is a strong filter")];

struct Criterion {
    id: u8,
    title: &'static str,
    checks: Vec<(String, bool, String)>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Criterion {
        Criterion { id, title, checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push((name.into(), ok, detail.into()));
    }

    fn failures(&self) -> Vec<&(String, bool, String)> {
        self.checks.iter().filter(|c| !c.1).collect()
    }

    fn line(&self) -> String {
        let bad = self.failures();
        if bad.is_empty() {
            format!("criterion {}: PASS {} ({} checks)", self.id, self.title, self.checks.len())
        } else {
            let what: Vec<String> = bad.iter().map(|(n, _, d)| format!("{n}: {d}")).collect();
            format!(
                "criterion {}: FAIL {} ({} of {} checks disagree: {})",
                self.id,
                self.title,
                bad.len(),
                self.checks.len(),
                what.join("; ")
            )
        }
    }
}

fn load(name: &str) -> FinStructure {
    corpus::load(name)
}

fn ix(s: &FinStructure, l: &str) -> usize {
    s.carrier().index_of(l).unwrap_or_else(|| panic!("label {l}"))
}

fn labels(s: &FinStructure, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| s.label(x).to_string()).collect()
}

fn set(s: &FinStructure, text: &str) -> ElemSet {
    parse_set(s.carrier(), text).unwrap()
}

/// Passes iff the verdict fails with this clause and witness, and the clause
/// really fails again at the witness.
fn expect_witness(c: &mut Criterion, s: &FinStructure, name: &str, sys: A, clause: &str, witness: &[&str]) {
    let v = axioms::check(s, sys).unwrap();
    let got = v.labeled_witness(s.carrier());
    let recheck = v.clause.as_deref().map(|cl| clause_holds(s, sys, cl, &v.witness).unwrap());
    let ok = !v.pass && v.clause.as_deref() == Some(clause) && got == witness && recheck == Some(Some(false));
    c.check(name, ok, format!("{:?} at ({}), recheck {:?}", v.clause, got.join(","), recheck));
}

fn expect_pass(c: &mut Criterion, s: &FinStructure, name: &str, sys: A) {
    let v = axioms::check(s, sys).unwrap();
    c.check(name, v.pass, format!("{} {:?}", sys.name(), v.clause));
}

fn corpus_fidelity() -> Criterion {
    let mut c = Criterion::new(1, "corpus tables induce the stated orders");
    for name in corpus::NAMES {
        let s = load(name);
        let star = s.star_table().expect("corpus entries have a star table");
        let ind = induced_order(s.carrier().clone(), star, s.one()).unwrap();
        c.check(name, &ind == s.poset(), "induced order equals stated order");
    }
    c
}

fn positive() -> Criterion {
    let mut c = Criterion::new(2, "positive classifications");
    for (name, sys) in [
        ("fig1", A::SkewHilbert),
        ("fig2", A::SkewHilbert),
        ("mo2", A::LatticeSkewHilbert),
        ("o6", A::LatticeSkewHilbert),
        ("fig5", A::SkewHilbert),
        ("fig5", A::SectionallyPcPoset),
        ("fig6", A::SkewHilbert),
        ("fig7", A::SkewHilbert),
    ] {
        expect_pass(&mut c, &load(name), &format!("{name} {}", sys.name()), sys);
    }
    c
}

fn negative() -> Criterion {
    let mut c = Criterion::new(3, "negative witnesses");
    let fig1 = load("fig1");
    expect_witness(&mut c, &fig1, "fig1 strong", A::StrongSkewHilbert, "S2'", &["a", "b"]);
    expect_witness(&mut c, &fig1, "fig1 hilbert", A::Hilbert, "H5", &["a", "0", "e"]);
    let fig2 = load("fig2");
    expect_witness(&mut c, &fig2, "fig2 strong", A::StrongSkewHilbert, "S2'", &["b", "a"]);
    let (cc, a) = (ix(&fig2, "c"), ix(&fig2, "a"));
    let spc = sectional_pseudocomplement(fig2.poset(), cc, a);
    c.check("fig2 sectional pseudocomplement at (c,a)", spc != Some(fig2.s(cc, a)), format!("{spc:?} vs c*a"));
    let mo2 = load("mo2");
    expect_witness(&mut c, &mo2, "mo2 pseudocomplemented lattice", A::SectionallyPcLattice, "SPL1", &["a", "0", "b"]);
    let fig6 = load("fig6");
    expect_witness(&mut c, &fig6, "fig6 strong", A::StrongSkewHilbert, "S2'", &["a", "b"]);
    c
}

fn special_sets() -> Criterion {
    let mut c = Criterion::new(4, "closed, dense and weakly dense elements");
    let fig5 = load("fig5");
    let sets = cons::special_subsets(&fig5).unwrap();
    c.check("fig5 dense", sets.dense == set(&fig5, "{e,1}"), "D = {e,1}");
    c.check("fig5 weakly dense", sets.weakly_dense == set(&fig5, "{a,b,e,1}"), "W = {a,b,e,1}");
    let w = sets.weakly_dense;
    let (b, d) = (ix(&fig5, "b"), ix(&fig5, "d"));
    c.check(
        "fig5 weakly dense not an upper set",
        cons::upper_set_witness(fig5.poset(), w).is_some() && w.contains(b) && fig5.leq(b, d) && !w.contains(d),
        "b in W, b <= d, d not in W",
    );
    let o6 = load("o6");
    let (built, v) = cons::pst_construct(o6.poset(), o6.comp_table().unwrap()).unwrap();
    let back = cons::closed_elements(&built).unwrap();
    c.check(
        "o6 closed elements of the construction",
        v.pass && back.poset() == o6.poset() && back.comp_table() == o6.comp_table(),
        "orthoposet recovered",
    );
    for name in corpus::NAMES {
        let s = load(name);
        if s.zero().is_some() {
            let v = cons::triplet_lemma(&s).unwrap();
            c.check(format!("{name} complement decomposition"), v.pass, v.detail);
        }
    }
    c
}

fn congruence_examples() -> Criterion {
    let mut c = Criterion::new(5, "congruence examples");
    let fig6 = load("fig6");
    let th6 = Partition::parse(fig6.carrier(), "{a,b|c|d,e,f,g,1}").unwrap();
    let ms = congruence::is_congruence(&fig6, &th6, CongMode::MinStable).unwrap();
    c.check("fig6 partition is a min-stable congruence", ms.pass, ms.detail);
    let st = congruence::is_strong_congruence(&fig6, &th6).unwrap();
    c.check("fig6 partition is not strong", !st.pass, format!("{:?}", st.clause));
    let a = ix(&fig6, "a");
    c.check(
        "fig6 block of a has no greatest element",
        fig6.poset().greatest(th6.class_of(a)).is_none(),
        "{a,b} has no greatest element",
    );

    let alt = load("fig1alt");
    let tha = Partition::parse(alt.carrier(), "{0|a|b,e|c,d,1}").unwrap();
    let sc = congruence::is_strong_congruence(&alt, &tha).unwrap();
    c.check("fig1alt partition is a congruence of the implication reduct", sc.pass, sc.detail);
    let fs = congruence::is_full_signature(&alt, &tha).unwrap();
    let w = fs.labeled_witness(alt.carrier());
    c.check(
        "fig1alt partition breaks meet at (c,d) with a",
        !fs.pass && fs.clause.as_deref() == Some("meet") && w == ["c", "d", "a"],
        format!("{:?} at ({})", fs.clause, w.join(",")),
    );

    let fig7 = load("fig7");
    let th7 = Partition::parse(fig7.carrier(), "{a|b|c|d,e,f,1}").unwrap();
    let one = th7.class_of(fig7.one());
    let cg = congruence::is_congruence(&fig7, &th7, CongMode::MinStable).unwrap();
    c.check("fig7 partition is a congruence", cg.pass, cg.detail);
    c.check("fig7 1-class", one == set(&fig7, "{d,e,f,1}"), "[1] = {d,e,f,1}");
    let f = congruence::is_filter(&fig7, one, FilterKind::Filter).unwrap();
    c.check("fig7 1-class is a filter", f.pass, f.detail);
    let sf = congruence::is_filter(&fig7, one, FilterKind::StrongFilter).unwrap();
    let sw = sf.labeled_witness(fig7.carrier());
    c.check(
        "fig7 1-class is a strong filter",
        sf.pass,
        format!("STRONG_FILTER fails {} at ({})", sf.clause.as_deref().unwrap_or("-"), sw.join(",")),
    );
    let rel = phi(&fig7, one);
    let (x, y) = (ix(&fig7, "a"), ix(&fig7, "b"));
    c.check(
        "fig7 filter relation differs at (a,b)",
        rel.contains(x, y) && !th7.same(x, y) && rel != th7.relation(),
        "(a,b) in Φ([1]Θ) but not in Θ",
    );
    c
}

fn models_up_to(sys: A, max: usize) -> Vec<FinStructure> {
    (1..=max).flat_map(|n| enumerate_models(&SearchSpec::new(n, sys)).unwrap()).collect()
}

fn with_corpus(mut models: Vec<FinStructure>, sys: A) -> Vec<FinStructure> {
    models.extend(corpus::NAMES.iter().map(|n| load(n)).filter(|s| axioms::holds(s, sys)));
    models
}

fn all_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    (0u64..1 << n).map(ElemSet)
}

/// Per-theorem instance counts; the first few failures of each are kept.
#[derive(Default)]
struct Tally {
    rows: Vec<(&'static str, usize, Vec<String>)>,
}

impl Tally {
    fn record(&mut self, name: &'static str, s: &FinStructure, ok: bool, detail: impl FnOnce() -> String) {
        let i = match self.rows.iter().position(|r| r.0 == name) {
            Some(i) => i,
            None => {
                self.rows.push((name, 0, Vec::new()));
                self.rows.len() - 1
            }
        };
        let row = &mut self.rows[i];
        row.1 += 1;
        if !ok && row.2.len() < 3 {
            row.2.push(format!("{} on {}", detail(), s.carrier().labels().join(" ")));
        }
    }

    fn identity(&mut self, name: &'static str, s: &FinStructure, lhs: &Term, rhs: &Term) {
        let v = term::holds_identity(s, lhs, rhs, IdentityMode::Strict).unwrap();
        self.record(name, s, v.pass, || format!("{lhs} = {rhs} fails at {:?}", labels(s, &v.witness)));
    }

    fn into_checks(self, c: &mut Criterion) {
        for (name, n, fails) in self.rows {
            let detail = if fails.is_empty() { format!("{n} instances") } else { fails.join("; ") };
            c.check(name, fails.is_empty() && n > 0, detail);
        }
    }
}

fn theorem_suites() -> Criterion {
    let mut c = Criterion::new(6, "theorem suites over all models of size at most 5 and the corpus");
    let lattice = with_corpus(models_up_to(A::LatticeSkewHilbert, 5), A::LatticeSkewHilbert);
    let strong = with_corpus(models_up_to(A::StrongSkewHilbert, 5), A::StrongSkewHilbert);
    let skew = with_corpus(models_up_to(A::SkewHilbert, 5), A::SkewHilbert);
    let mut t = Tally::default();

    let one_one = [("z", Term::One), ("u", Term::One)];
    let small_t = builtin("t").unwrap();
    let big_t = builtin("T").unwrap();
    let xy = [("z", term::star(term::var("x"), term::var("y"))), ("u", term::star(term::var("y"), term::var("x")))];
    let (x, y) = (term::var("x"), term::var("y"));

    for s in &lattice {
        let v = congruence::verify_correspondence(s).unwrap();
        t.record("congruence/filter correspondence", s, v.pass, || v.detail.clone());
        for theta in congruence::enumerate_congruences(s, CongMode::FullSignature).unwrap() {
            let ok = phi(s, theta.class_of(s.one())) == theta.relation();
            t.record("kernel determines congruence", s, ok, || theta.format(s.carrier()));
        }
        for f in congruence::enumerate_filters(s, FilterKind::LatticeFilter).unwrap() {
            let ok = phi(s, f).to_partition().is_some_and(|p| {
                p.class_of(s.one()) == f && congruence::is_full_signature(s, &p).is_ok_and(|v| v.pass)
            });
            t.record("lattice-filter relation is a congruence with kernel F", s, ok, || format!("{f:?}"));
        }
        for (name, m) in [("maltsev p", MaltsevTerm::P), ("maltsev q", MaltsevTerm::Q)] {
            let v = term::maltsev_check(s, m).unwrap();
            t.record(name, s, v.pass, || v.detail.clone());
        }
        for f in all_subsets(s.size()) {
            let closed = ideal_closure_check(s, f, IdealFamily::Lattice).unwrap().pass;
            let filter = congruence::is_filter(s, f, FilterKind::LatticeFilter).unwrap().pass;
            t.record("ideal-term closure matches lattice filters", s, closed == filter, || {
                format!("{f:?}: closed {closed}, filter {filter}")
            });
        }
        t.identity("t(x,y,1,1) = y", s, &small_t.substitute(&one_one), &y);
        t.identity("t(x,y,x*y,y*x) = x", s, &small_t.substitute(&xy), &x);
    }

    for s in &strong {
        t.identity("T(x,y,1,1) = y", s, &big_t.substitute(&one_one), &y);
        t.identity("T(x,y,x*y,y*x) = x", s, &big_t.substitute(&xy), &x);
        let back = cons::from_psb(&cons::to_psb(s).unwrap()).unwrap();
        let ok = back.star_table() == s.star_table() && back.poset() == s.poset();
        t.record("sections rebuild the star", s, ok, String::new);
    }

    for s in &skew {
        let alg = congruence::enumerate_congruences(s, CongMode::Algebraic).unwrap();
        let ms = congruence::enumerate_congruences(s, CongMode::MinStable).unwrap();
        t.record("algebraic congruences are min-stable", s, alg == ms, || format!("{} vs {}", alg.len(), ms.len()));
        for theta in &ms {
            let ok = congruence::classes_convex(s, theta).pass;
            t.record("congruence classes are convex", s, ok, || theta.format(s.carrier()));
        }
        for f in congruence::enumerate_filters(s, FilterKind::StarFilter).unwrap() {
            let ok = phi(s, f).to_partition().is_some_and(|p| {
                p.class_of(s.one()) == f && congruence::is_algebraic(s, &p).is_ok_and(|v| v.pass)
            });
            t.record("filter relation is a congruence with kernel F", s, ok, || format!("{f:?}"));
        }
        for p in 0..s.size() {
            let v = cons::section_laws(s, p).unwrap();
            t.record("section laws", s, v.pass, || format!("at {}: {:?}", s.label(p), v.clause));
        }
    }

    t.into_checks(&mut c);
    c.check(
        "suite sizes",
        !lattice.is_empty() && !strong.is_empty() && !skew.is_empty(),
        format!("{} lattice, {} strong, {} skew structures", lattice.len(), strong.len(), skew.len()),
    );
    c
}

fn oracle_counts() -> Criterion {
    let mut c = Criterion::new(7, "model counts by two strategies");
    let labelled2 = count_models(&SearchSpec::new(2, A::SkewHilbert).labelled()).unwrap();
    let brute2 = brute_force_models(2, A::SkewHilbert, false).unwrap().len();
    c.check("size 2 labelled", labelled2 == 1 && brute2 == 1, format!("{labelled2} and {brute2}"));
    let iso3 = count_models(&SearchSpec::new(3, A::SkewHilbert)).unwrap();
    let brute3 = brute_force_models(3, A::SkewHilbert, true).unwrap().len();
    c.check("size 3 up to isomorphism", iso3 == 2 && brute3 == 2, format!("{iso3} and {brute3}"));
    c
}

fn separations() -> Criterion {
    let mut c = Criterion::new(8, "separations and implications by search");
    for (a, b) in [
        (A::SkewHilbert, A::StrongSkewHilbert),
        (A::SkewHilbert, A::Hilbert),
        (A::LatticeSkewHilbert, A::SectionallyPcLattice),
        (A::StrongSkewHilbert, A::SectionallyPcPoset),
    ] {
        let name = format!("{} but not {}", a.name(), b.name());
        match search::find_counterexample(a, b, 7).unwrap() {
            Some(ce) => {
                let s = &ce.structure;
                let ok = axioms::holds(s, a) && !axioms::holds(s, b);
                c.check(name, ok, format!("size {}, fails {:?}", s.size(), ce.verdict.clause));
            }
            None => c.check(name, false, "no model up to size 7"),
        }
    }
    for (a, b) in [(A::StrongSkewHilbert, A::SkewHilbert), (A::LatticeSkewHilbert, A::StrongSkewHilbert)] {
        let found = search::find_counterexample(a, b, 5).unwrap();
        c.check(format!("{} implies {} up to size 5", a.name(), b.name()), found.is_none(), format!("{:?}", found.map(|x| x.verdict)));
    }
    c
}

fn main() {
    let criteria = [
        corpus_fidelity(),
        positive(),
        negative(),
        special_sets(),
        congruence_examples(),
        theorem_suites(),
        oracle_counts(),
        separations(),
    ];
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    for cr in &criteria {
        println!("{}", cr.line());
        if verbose {
            for (name, ok, detail) in &cr.checks {
                eprintln!("    {} {name}: {detail}", if *ok { "ok  " } else { "FAIL" });
            }
        }
    }
    let mut unexpected = Vec::new();
    for cr in &criteria {
        for (name, _, detail) in cr.failures() {
            if !KNOWN.contains(&(cr.id, name.as_str())) {
                unexpected.push(format!("criterion {}: {name}: {detail}", cr.id));
            }
        }
    }
    for &(id, name) in KNOWN {
        let cr = criteria.iter().find(|c| c.id == id).unwrap();
        if !cr.failures().iter().any(|(n, _, _)| n == name) {
            unexpected.push(format!("criterion {id}: `{name}` was expected to disagree but now agrees"));
        }
    }
    unexpected.extend(manifest_failures());
    if !unexpected.is_empty() {
        eprintln!("unexpected outcomes:\n{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}

/// Every corpus manifest claim must hold.
fn manifest_failures() -> Vec<String> {
    let entries = corpus::builtin().unwrap();
    let mut out = Vec::new();
    for e in corpus::verify(&entries) {
        for c in e.claims.iter().filter(|c| !c.pass) {
            out.push(format!("manifest {}: {}: {}", e.name, c.note, c.detail));
        }
    }
    out
}
