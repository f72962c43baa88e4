//! f(0,1) on two bosons: the coproduct against the free-field display, and
//! the rewriting in W011 modes.

use yangian_forge::shc::{check_rewriting, check_tensor_f01, RewriteChain};

fn main() {
    let c = check_tensor_f01(3);
    println!("{:<6} {}", c.status.label(), c.id);
    for chain in [RewriteChain::Literal, RewriteChain::Corrected] {
        let c = check_rewriting(chain, 2);
        println!("{:<6} {}  {}", c.status.label(), c.id, c.detail.unwrap_or_default());
    }
}
