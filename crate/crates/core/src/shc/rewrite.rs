//! Two-boson `f(0,1)` rewritten in modes of the W011 generators.

use super::rep::{SHRepresentation, ZeroModeConvention};
use crate::fock::{Field, Op};
use crate::ratfun::Scalar;
use crate::report::Check;
use crate::walg::build_w011_on;

/// Which subtraction chain to use.
///
/// `Literal` is the printed one: `mu3 = h1 h2 b0 + h3`, then
/// `(s3/4) sum |l| :W1 W1:`, the zero mode of the five-term combination, and
/// finally `W_{2,0}` and `(W1 W1)_0`. `Corrected` uses `mu3 = h1 h2 b0 - h2`
/// and replaces the last two terms of the combination and the final step by
/// `-(h1/2) W2 - (s3/4) (W1 W1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteChain {
    Literal,
    Corrected,
}

impl RewriteChain {
    pub fn name(self) -> &'static str {
        match self {
            RewriteChain::Literal => "literal",
            RewriteChain::Corrected => "corrected",
        }
    }
}

/// `f(0,1)` minus the chain's subtractions on levels `0..=n`: `Ok(c)` if it is `c` times the identity.
pub fn rewriting_residual(chain: RewriteChain, n: usize) -> Result<Scalar, String> {
    let (h1, h2, h3) = (Scalar::h1(), Scalar::h2(), Scalar::h3());
    let s3 = Scalar::sigma3();
    let (mu2, mu3) = (Scalar::sym("mu2_1"), Scalar::sym("mu3_1"));
    let p2 = &mu2 / &(&h1 * &h3);
    let p3 = match chain {
        RewriteChain::Literal => (&mu3 - &h3) / (&h1 * &h2),
        RewriteChain::Corrected => (&mu3 + &h2) / (&h1 * &h2),
    };
    let rep = SHRepresentation::new(&[2, 3], &[mu2, mu3], Some(vec![p2, p3]), n, 0, ZeroModeConvention::Level)
        .expect("generating set");
    let w = build_w011_on(rep.engine().space().clone());
    let (w1, w2, w3) = (w.w1().clone(), w.w2().unwrap().clone(), w.w3().unwrap().clone());

    let k = (n + 2) as i64;
    let abs = Op::lin(
        (1..=k).map(|l| (Scalar::int(2 * l), Op::product(&[Op::mode(&w1, -l), Op::mode(&w1, l)]))).collect(),
    );
    let quad = h1.pow(2) + Scalar::int(2) * &h1 * &h2 + Scalar::int(2) * h2.pow(2);
    let mut z = vec![
        ((&h3 - &h2) / Scalar::int(24), w3.clone()),
        (&h2 * &h3, w1.nop(&w2)),
        ((&h2 * &h3).pow(2) / Scalar::int(6), w1.nop(&w1.nop(&w1))),
    ];
    match chain {
        RewriteChain::Literal => {
            z.push((-(&h2 * &h3).pow(2) / (Scalar::int(2) * (&h2 - &h3)), w1.nop(&w1.d(1))));
            z.push((&quad / (Scalar::int(4) * (&h2 - &h3)), w2.d(1)));
        }
        RewriteChain::Corrected => {
            z.push((-&h1 / Scalar::int(2), w2.clone()));
            z.push((-&s3 / Scalar::int(4), w1.nop(&w1)));
        }
    }
    let mut terms = vec![
        (Scalar::one(), rep.f0(1)),
        (-&s3 / Scalar::int(4), abs),
        (Scalar::int(-1), Op::mode(&Field::lin(z), 0)),
    ];
    if chain == RewriteChain::Literal {
        let y = Field::lin(vec![
            ((&h1 * &(&h3 - &h2)).inv(), w2),
            (-(&quad / (Scalar::int(4) * &h1 * &(&h2 - &h3))), w1.nop(&w1)),
        ]);
        terms.push((Scalar::int(-1), Op::mode(&y, 0)));
    }
    rep.scalar_value(&Op::lin(terms), n)
}

/// Passes iff the residual acts as a scalar on levels `0..=n`.
pub fn check_rewriting(chain: RewriteChain, n: usize) -> Check {
    let c = Check::new(format!("rewrite/{}", chain.name()), "f(0,1) in W011 modes up to a constant")
        .param("levels", n)
        .param("chain", chain.name());
    match rewriting_residual(chain, n) {
        Ok(v) => c.outcome(true, "0").detail(format!("constant c = {}", v.to_text())),
        Err(why) => c.outcome(false, "not scalar").detail(why),
    }
}
