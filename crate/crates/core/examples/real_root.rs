//! The only real solution of x + e^x = 0.

use xx_mono::equation::{eval, real_root};

fn main() {
    let x = real_root();
    println!("x          = {:.17}", x.re);
    println!("x + e^x    = {:e}", eval(x).unwrap().re);
    println!("2x < -1    : {}", 2.0 * x.re < -1.0);
}
