//! Acceptance criteria 1–11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails or exceeds its time bound.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cobarlab::chain::{boundary as cx_boundary, simplex_chain, Chain};
use cobarlab::cobar::{
    cobar_diff, cobar_mul, confluent_under_all_orders, letter, random_normal_word, random_raw_word, CobarLetter,
};
use cobarlab::homology::cobar_homology;
use cobarlab::homotopy::{mp_contraction, wedge_contraction, words_up_to, ContractionPath, Homotopy};
use cobarlab::loop_group::{boundary, map_chain, random_basis_word, shuffle_mul, tau, word_chain, GroupChain, GroupWord};
use cobarlab::models::{deltabar, sphere, wedge};
use cobarlab::retraction::Retraction;
use cobarlab::sset::{Simplex, SimplicialMap};
use cobarlab::szczarba::{common_degeneracy_check, enumerate_s, sz, SzSequence, Szczarba};
use cobarlab::verify::{run_suite, Limits, Suite, DEFAULT_SEED};
use cobarlab::SimplicialSet;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn five_models() -> Vec<SimplicialSet> {
    vec![sphere(2), sphere(3), deltabar(2), deltabar(3), deltabar(4)]
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ salt)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

/// Up to `want` nondegenerate words of the given degree. High-degree words
/// on small models need several letters before they stop being degenerate.
fn sample_words(x: &SimplicialSet, degree: usize, want: usize, rng: &mut ChaCha8Rng) -> Vec<GroupWord> {
    let mut out = Vec::new();
    if x.loop_generators(degree + 1).is_empty() {
        return out;
    }
    for _ in 0..want * 20 {
        if out.len() == want {
            break;
        }
        if let Some(w) = random_basis_word(x, degree, 6, rng) {
            out.push(w);
        }
    }
    out
}

fn c1_twisting() -> Outcome {
    let mut checks = 0;
    for x in five_models() {
        let rep = run_suite(Suite::Twisting, &x, Limits { max_degree: 3, max_word_length: 1, samples: 0, seed: DEFAULT_SEED })
            .map_err(e)?;
        ensure(rep.all_passed(), || rep.render_text())?;
        checks += rep.passed;
    }
    Ok(format!("{checks} checks on simplices of dim ≤ 4"))
}

fn c2_differentials() -> Outcome {
    let mut rng = rng(2);
    let (mut cx, mut cgx, mut cob) = (0, 0, 0);
    for x in five_models() {
        for d in 1..=x.top_dim().min(4) {
            for c in x.nondegenerate(d) {
                if d == 1 {
                    let g = letter(CobarLetter::Suspended(c));
                    let dd = cobar_diff(&x, &cobar_diff(&x, &g).map_err(e)?).map_err(e)?;
                    ensure(dd.is_zero(), || format!("cobar {}: ∂∂ s-1 {} ≠ 0", x.name(), x.simplex_name(c)))?;
                    cob += 1;
                    continue;
                }
                let dd = cx_boundary(&x, &cx_boundary(&x, &simplex_chain(Simplex::nondegenerate(c))).map_err(e)?).map_err(e)?;
                ensure(dd.is_zero(), || format!("CX {}: ∂∂{} ≠ 0", x.name(), x.simplex_name(c)))?;
                cx += 1;
                let g = letter(CobarLetter::Suspended(c));
                let dd = cobar_diff(&x, &cobar_diff(&x, &g).map_err(e)?).map_err(e)?;
                ensure(dd.is_zero(), || format!("cobar {}: ∂∂ s-1 {} ≠ 0", x.name(), x.simplex_name(c)))?;
                cob += 1;
            }
        }
        for n in 2..=4 {
            let words = sample_words(&x, n, 200, &mut rng);
            ensure(words.len() == 200 || x.loop_generators(n + 1).is_empty(), || {
                format!("CGX {}: only {} words in degree {n}", x.name(), words.len())
            })?;
            for w in words {
                let dd = boundary(&x, &boundary(&x, &word_chain(w.clone())).map_err(e)?).map_err(e)?;
                ensure(dd.is_zero(), || format!("CGX {}: ∂∂{} ≠ 0", x.name(), w.render(&x)))?;
                cgx += 1;
            }
        }
    }
    Ok(format!("{cx} simplices, {cgx} loop-group words, {cob} cobar generators"))
}

fn c3_confluence() -> Outcome {
    let mut rng = rng(3);
    let models = [deltabar(2), deltabar(3), sphere(2)];
    for k in 0..1000 {
        let x = &models[k % models.len()];
        let w = random_raw_word(x, 8, 4, &mut rng);
        ensure(w.len() <= 8, || "word too long".into())?;
        ensure(confluent_under_all_orders(&w), || format!("{}: orders disagree on {}", x.name(), w.render(x)))?;
    }
    Ok("1000 raw words".into())
}

fn c4_degree_zero() -> Outcome {
    let mut rng = rng(4);
    let models = [deltabar(2), deltabar(3), deltabar(4)];
    for k in 0..500 {
        let x = &models[k % models.len()];
        let f = Szczarba::new(x).map_err(e)?;
        let p = Retraction::new(x).map_err(e)?;
        let g = random_basis_word(x, 0, 6, &mut rng).ok_or("no degree-0 generators")?;
        let c = word_chain(g.clone());
        let back = f.apply(&p.apply(&c).map_err(e)?).map_err(e)?;
        ensure(back == c, || format!("{}: φ₀ψ₀ ≠ Id on {}", x.name(), g.render(x)))?;
        let w = random_normal_word(x, 0, 6, &mut rng).ok_or("no degree-0 cobar word")?;
        let a = Chain::basis(0, w.clone());
        let back = p.apply(&f.apply(&a).map_err(e)?).map_err(e)?;
        ensure(back == a, || format!("{}: ψ₀φ₀ ≠ Id on {}", x.name(), w.render(x)))?;
    }
    Ok("500 words each way".into())
}

fn c5_phi_dga() -> Outcome {
    let mut rng = rng(5);
    let (mut gens, mut pairs) = (0, 0);
    for x in five_models() {
        let f = Szczarba::new(&x).map_err(e)?;
        for d in 2..=x.top_dim().min(4) {
            for c in x.nondegenerate(d) {
                let g = letter(CobarLetter::Suspended(c));
                let lhs = boundary(&x, &f.apply(&g).map_err(e)?).map_err(e)?;
                let rhs = f.apply(&cobar_diff(&x, &g).map_err(e)?).map_err(e)?;
                ensure(lhs == rhs, || format!("{}: ∂φ ≠ φ∂ on s-1 {}", x.name(), x.simplex_name(c)))?;
                gens += 1;
            }
        }
        let top = x.top_dim() - 1;
        let mut found = 0;
        for _ in 0..2000 {
            if found == 100 {
                break;
            }
            let p = rng.gen_range(0..=top);
            let q = rng.gen_range(0..=top - p);
            let (Some(a), Some(b)) = (random_normal_word(&x, p, 3, &mut rng), random_normal_word(&x, q, 3, &mut rng)) else {
                continue;
            };
            let (ca, cb) = (Chain::basis(p, a.clone()), Chain::basis(q, b.clone()));
            let lhs = f.apply(&cobar_mul(&ca, &cb)).map_err(e)?;
            let rhs = shuffle_mul(&f.apply(&ca).map_err(e)?, &f.apply(&cb).map_err(e)?).map_err(e)?;
            ensure(lhs == rhs, || format!("{}: φ(ab) ≠ φ(a)φ(b) for {} ⊗ {}", x.name(), a.render(&x), b.render(&x)))?;
            found += 1;
        }
        ensure(found == 100, || format!("{}: only {found} pairs sampled", x.name()))?;
        pairs += found;
    }
    Ok(format!("{gens} generators, {pairs} pairs"))
}

fn c6_relations() -> Outcome {
    let x = deltabar(4);
    let mut checks = 0;
    for n in 1..=3 {
        for c in x.nondegenerate(n + 1) {
            let s = Simplex::nondegenerate(c);
            for i in enumerate_s(n) {
                let inst = || format!("i={:?}, x={}", i.entries(), x.simplex_name(c));
                let lhs = sz(&x, &i, s).map_err(e)?.face(&x, 0).map_err(e)?;
                let y = x.face(s, i.entries()[0] + 1).map_err(e)?;
                let rhs = match i.tail() {
                    Some(t) => sz(&x, &t, y).map_err(e)?,
                    None => tau(y).map_err(e)?.inv(),
                };
                ensure(lhs == rhs, || format!("relation 1 fails at {}", inst()))?;
                checks += 1;
                let en = i.entries();
                for k in 1..n {
                    if en[k - 1] > en[k] {
                        let mut sw = en.to_vec();
                        sw[k - 1] = en[k];
                        sw[k] = en[k - 1] - 1;
                        let j = SzSequence::new(sw).map_err(e)?;
                        let a = sz(&x, &i, s).map_err(e)?.face(&x, k).map_err(e)?;
                        let b = sz(&x, &j, s).map_err(e)?.face(&x, k).map_err(e)?;
                        ensure(a == b, || format!("relation 2 fails at {}, k={k}", inst()))?;
                        checks += 1;
                    }
                }
                ensure(common_degeneracy_check(&x, &i, s).map_err(e)?, || format!("common degeneracy fails at {}", inst()))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} checks"))
}

fn c7_retraction() -> Outcome {
    let mut checks = 0;
    for x in [sphere(2), deltabar(2), deltabar(3)] {
        let limits = Limits { max_degree: 3, max_word_length: 3, samples: 100, seed: DEFAULT_SEED };
        let rep = run_suite(Suite::Retraction, &x, limits).map_err(e)?;
        ensure(rep.all_passed(), || rep.render_text())?;
        checks += rep.passed;
    }
    Ok(format!("{checks} checks"))
}

fn contraction_identities(
    x: &SimplicialSet,
    h: impl Fn(&SimplicialSet, &GroupChain) -> cobarlab::Result<GroupChain>,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let mut count = 0;
    for n in 1..=3 {
        let words = sample_words(x, n, 50, rng);
        ensure(words.len() == 50, || format!("{}: only {} words in degree {n}", x.name(), words.len()))?;
        for w in words {
            let c = word_chain(w.clone());
            let lhs = &boundary(x, &h(x, &c).map_err(e)?).map_err(e)? + &h(x, &boundary(x, &c).map_err(e)?).map_err(e)?;
            ensure(lhs == c, || format!("{}: ∂h + h∂ ≠ Id on {}", x.name(), w.render(x)))?;
            let hh = h(x, &h(x, &c).map_err(e)?).map_err(e)?;
            ensure(hh.is_zero(), || format!("{}: hh ≠ 0 on {}", x.name(), w.render(x)))?;
            count += 1;
        }
    }
    Ok(count)
}

fn c8_mp_contraction() -> Outcome {
    let mut rng = rng(8);
    let mut words = 0;
    for x in [deltabar(2), deltabar(3)] {
        words += contraction_identities(&x, mp_contraction, &mut rng)?;
    }
    Ok(format!("{words} words"))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn c9_wedge_contraction() -> Outcome {
    let mut rng = rng(9);
    let (mut words, mut nat) = (0, 0);
    for k in 1..=3 {
        for n in [2, 3] {
            let m = wedge(k, n);
            words += contraction_identities(&m, wedge_contraction, &mut rng)?;
            let tops: Vec<Simplex> = m.nondegenerate(n).map(Simplex::nondegenerate).collect();
            for perm in permutations(k) {
                let images: Vec<Simplex> = perm.iter().map(|&i| tops[i]).collect();
                let g = SimplicialMap::representing(&m, &m, &images).map_err(e)?;
                for d in 1..=3 {
                    for w in sample_words(&m, d, 10, &mut rng) {
                        let c = word_chain(w.clone());
                        let lhs = map_chain(&g, &wedge_contraction(&m, &c).map_err(e)?).map_err(e)?;
                        let rhs = wedge_contraction(&m, &map_chain(&g, &c).map_err(e)?).map_err(e)?;
                        ensure(lhs == rhs, || format!("{}: h̃ not natural under {perm:?} on {}", m.name(), w.render(&m)))?;
                        nat += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{words} words, {nat} naturality checks"))
}

fn c10_homotopy_formula() -> Outcome {
    let h = Homotopy::new(2);
    let mut words = 0;
    for x in [sphere(2), deltabar(2)] {
        for n in 1..=2 {
            for w in words_up_to(&x, n, 2) {
                let res = h.residual(&x, &word_chain(w.clone())).map_err(e)?;
                ensure(res.is_zero(), || format!("{}: residual nonzero on {}", x.name(), w.render(&x)))?;
                words += 1;
            }
        }
    }
    let models = h.computed();
    let mut fallback = 0;
    for mv in &models {
        let hh = wedge_contraction(&mv.model, &mv.value).map_err(e)?;
        ensure(hh.is_zero(), || format!("h̃Φ ≠ 0 on model n={}, α={:?}", mv.key.n, mv.key.exponents))?;
        if mv.path == ContractionPath::Solver {
            fallback += 1;
        }
    }
    let path = if fallback == 0 { "cone contraction only".to_string() } else { format!("FALLBACK solver on {fallback} models") };
    Ok(format!("{words} words, {} model words, {path}", models.len()))
}

fn c11_homology() -> Outcome {
    let expect = [(sphere(2), 3, vec![1, 1, 1, 1]), (sphere(3), 4, vec![1, 0, 1, 0, 1])];
    let mut lines = Vec::new();
    for (x, n_max, betti) in expect {
        let groups = cobar_homology(&x, n_max).map_err(e)?;
        let oracle = cobarlab::verify::tensor_algebra_ranks(&x, n_max).ok_or("no tensor-algebra oracle")?;
        ensure(oracle == betti, || format!("{}: oracle ranks {oracle:?}", x.name()))?;
        for g in &groups {
            ensure(g.betti == betti[g.degree] && g.torsion.is_empty(), || {
                format!("{}: H_{} = {g}, expected rank {}", x.name(), g.degree, betti[g.degree])
            })?;
        }
        ensure(groups.len() == n_max + 1, || format!("{}: {} groups", x.name(), groups.len()))?;
        lines.push(format!("{}: {}", x.name(), groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")));
    }
    Ok(lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("twisting axioms", 5, c1_twisting),
        ("∂² = 0 in CX, CGX and the cobar construction", 30, c2_differentials),
        ("cobar rewriting confluence", 10, c3_confluence),
        ("degree-0 ring isomorphism", 5, c4_degree_zero),
        ("φ is a DGA map", 120, c5_phi_dga),
        ("Szczarba relations and common degeneracy", 60, c6_relations),
        ("ψ chain and algebra map, ψφ = Id", 60, c7_retraction),
        ("cone contraction on GΔ̄[n]", 30, c8_mp_contraction),
        ("wedge contraction", 60, c9_wedge_contraction),
        ("∂Φ + Φ∂ = φψ − Id and h̃Φ = 0", 300, c10_homotopy_formula),
        ("cobar homology of S² and S³", 30, c11_homology),
    ];
    let mut failed = 0;
    for (k, (name, bound, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let within = elapsed < Duration::from_secs(bound);
        let (status, detail) = match (&outcome, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; exceeded {bound} s")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {:>2}: {name} [{:.2} s / {bound} s] {detail}", k + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
