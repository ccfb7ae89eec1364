//! Round-trip property over a generated corpus of ring expressions:
//! rendering a parse tree and reparsing it yields an identical tree.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ringlab::parser::{parse_ring, render_ring, ring_expr_eq, DslError};

const CORPUS_SEED: u64 = 0xC0FFEE;
const CORPUS_SIZE: usize = 100;

fn gen_poly(rng: &mut ChaCha8Rng) -> String {
    let degree = rng.gen_range(1..=3u64);
    let mut terms = vec![format!("x^{degree}")];
    for pow in (0..degree).rev() {
        if rng.gen_bool(0.6) {
            let c = rng.gen_range(1..=4u64);
            let sign = if rng.gen_bool(0.5) { "+" } else { "-" };
            let var = match pow {
                0 => String::new(),
                1 => "x".to_string(),
                p => format!("x^{p}"),
            };
            terms.push(format!("{sign}{c}{var}"));
        }
    }
    terms.concat()
}

fn gen_elem(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth > 0 && rng.gen_bool(0.3) {
        let parts: Vec<String> = (0..rng.gen_range(2..=3))
            .map(|_| gen_elem(rng, depth - 1))
            .collect();
        format!("({})", parts.join(","))
    } else {
        rng.gen_range(0..=20u64).to_string()
    }
}

fn gen_ideal(rng: &mut ChaCha8Rng) -> String {
    if rng.gen_bool(0.3) {
        "zero".to_string()
    } else {
        let elems: Vec<String> = (0..rng.gen_range(1..=2))
            .map(|_| gen_elem(rng, 1))
            .collect();
        format!("gen({})", elems.join(","))
    }
}

fn gen_atom(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let max = if depth == 0 { 3 } else { 7 };
    match rng.gen_range(0..=max) {
        0 | 1 => format!("Z{}", rng.gen_range(2..=50u64)),
        2 => {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            format!("Z{p}[x]/({})", gen_poly(rng))
        }
        3 => format!("bool({})", rng.gen_range(1..=4u64)),
        4 => format!("quot({};{})", gen_ring(rng, depth - 1), gen_ideal(rng)),
        5 => format!("idealize({};{})", gen_ring(rng, depth - 1), gen_ideal(rng)),
        6 => format!("amalg({};{})", gen_ring(rng, depth - 1), gen_ideal(rng)),
        _ => {
            let elems: Vec<String> = (0..rng.gen_range(1..=2))
                .map(|_| gen_elem(rng, 1))
                .collect();
            format!("loc({};{})", gen_ring(rng, depth - 1), elems.join(","))
        }
    }
}

fn gen_ring(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let factors = if depth > 0 && rng.gen_bool(0.4) {
        rng.gen_range(2..=3)
    } else {
        1
    };
    let parts: Vec<String> = (0..factors).map(|_| gen_atom(rng, depth)).collect();
    parts.join(" x ")
}

#[test]
fn render_parse_round_trip_over_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for i in 0..CORPUS_SIZE {
        let text = gen_ring(&mut rng, 2);
        let tree = parse_ring(&text)
            .unwrap_or_else(|e| panic!("corpus item {i} failed to parse: {text:?}: {e}"));
        let rendered = render_ring(&tree);
        let tree2 = parse_ring(&rendered)
            .unwrap_or_else(|e| panic!("rendered form failed to parse: {rendered:?}: {e}"));
        assert!(
            ring_expr_eq(&tree, &tree2),
            "round trip changed the tree: {text:?} -> {rendered:?}"
        );
    }
}

#[test]
fn error_positions_stay_inside_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 1);
    let mut errors_seen = 0usize;
    for _ in 0..CORPUS_SIZE {
        // Corrupt a valid expression by truncating or injecting a stray
        // character.
        let mut text = gen_ring(&mut rng, 2);
        if rng.gen_bool(0.5) {
            let cut = rng.gen_range(0..=text.len());
            text.truncate(cut);
        } else {
            let at = rng.gen_range(0..=text.len());
            text.insert(at, ['?', ';', ')', '^'][rng.gen_range(0..4)]);
        }
        if let Err(DslError { span, .. }) = parse_ring(&text) {
            errors_seen += 1;
            assert!(
                span.start <= span.end && span.end <= text.len().max(1),
                "error span {span:?} escapes input of length {}",
                text.len()
            );
        }
    }
    assert!(errors_seen > 20, "corruption produced too few parse errors");
}
