//! Parse rational functions and expand them at z = infinity.

use yangian_forge::ratfun::{series_expand, symbols, Context};

fn main() {
    let ctx = Context::new(&["z", "mu"]);
    let f = ctx.parse("(z - mu + h3)/(z - mu)").expect("parses");
    println!("f = {f}");
    let z = symbols::lookup("z").expect("registered");
    for (k, c) in series_expand(&f, z, 4).expect("no pole at infinity").iter().enumerate() {
        println!("  [z^-{k}] {c}");
    }
    let g = ctx.parse("(h1^2 - h2^2)/(h1 - h2) - h1").expect("parses");
    println!("(h1^2 - h2^2)/(h1 - h2) - h1 = {g}");
}
