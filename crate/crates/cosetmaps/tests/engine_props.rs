use cosetmaps::algebra::{AutElem, GroupCtx, Matrix};
use cosetmaps::engine::{
    check_word_on_group, eval_coset_map, eval_coset_map_naive, find_witness, residual_in_s, AssignmentResult, CompiledWord,
    EngineOpts, GroupVerdict, SearchOutcome,
};
use cosetmaps::words::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn families() -> Vec<GroupCtx> {
    vec![GroupCtx::psl2(3, 5, 1).unwrap(), GroupCtx::psl2(2, 4, 2).unwrap(), GroupCtx::suzuki(2, 3).unwrap()]
}

const WORDS: &[&str] = &["a^2", "abAB", "aabAB", "abaBB", "a^-3 b^2 a b", "abcABC"];

fn random_assignment(ctx: &GroupCtx, d: usize, rng: &mut ChaCha8Rng) -> Vec<AutElem> {
    (0..d).map(|_| ctx.cosets()[rng.gen_range(0..ctx.cosets().len())].clone()).collect()
}

#[test]
fn residual_lies_in_s_on_a_thousand_evaluations_per_family() {
    for ctx in families() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for i in 0..1000 {
            let w = CompiledWord::new(&Word::parse(WORDS[i % WORDS.len()]).unwrap());
            let asg = random_assignment(&ctx, w.d, &mut rng);
            let pt: Vec<Matrix> = (0..w.d).map(|_| ctx.random_s(&mut rng)).collect();
            let v = eval_coset_map(&ctx, &w, &asg, &pt);
            assert!(residual_in_s(&ctx, &w, &asg, &pt, &v), "{} {}", ctx.name(), w.word);
        }
    }
}

#[test]
fn fast_and_letterwise_evaluation_agree_and_keep_the_frobenius() {
    for ctx in families() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..300 {
            let w = CompiledWord::new(&Word::parse(WORDS[i % WORDS.len()]).unwrap());
            let asg = random_assignment(&ctx, w.d, &mut rng);
            let pt: Vec<Matrix> = (0..w.d).map(|_| ctx.random_s(&mut rng)).collect();
            let fast = eval_coset_map(&ctx, &w, &asg, &pt);
            assert!(ctx.eq(&fast, &eval_coset_map_naive(&ctx, &w, &asg, &pt)));
            let ids = vec![ctx.mat_identity(); w.d];
            assert_eq!(fast.frob, eval_coset_map(&ctx, &w, &asg, &ids).frob);
        }
    }
}

#[test]
fn every_emitted_witness_reverifies() {
    let opts = EngineOpts { seed: 17, ..EngineOpts::default() };
    let mut total = 0;
    for ctx in families() {
        for text in WORDS {
            let w = CompiledWord::new(&Word::parse(text).unwrap());
            let check = check_word_on_group(&ctx, &w, ctx.cosets(), &opts, text);
            for (asg, res) in check.assignments.iter().zip(&check.results) {
                if let AssignmentResult::Nonconstant(Some(pair)) = res {
                    assert!(pair.verify(&ctx, &w, asg), "{} {text}", ctx.name());
                    total += 1;
                }
            }
        }
    }
    assert!(total > 100, "only {total} witnesses emitted");
}

#[test]
fn sampling_never_claims_constancy() {
    // S has 16320 elements per variable, too many for exhaustion at this threshold.
    let ctx = GroupCtx::psl2(2, 5, 0).unwrap();
    let w = CompiledWord::new(&Word::power(31));
    let opts = EngineOpts { threshold: 10, budget: 4, ..EngineOpts::default() };
    let check = check_word_on_group(&ctx, &w, ctx.cosets(), &opts, "x31");
    assert_ne!(check.verdict, GroupVerdict::ConstantFound);
    for res in &check.results {
        assert!(!matches!(res, AssignmentResult::Constant(_)));
    }
}

#[test]
fn identical_inputs_give_identical_witnesses() {
    let ctx = GroupCtx::psl2(5, 2, 4).unwrap();
    let w = CompiledWord::new(&Word::parse("aabAB").unwrap());
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut evals = 0;
        match find_witness(&ctx, &w, &[ctx.cosets()[3].clone(), ctx.cosets()[1].clone()], 64, &mut rng, &mut evals) {
            SearchOutcome::Witness(p) => Some((p.describe().point_a, p.describe().point_b, evals)),
            SearchOutcome::Exhausted => None,
        }
    };
    let a = run();
    assert!(a.is_some());
    assert_eq!(a, run());
}
