//! Print a bundled polytope in the fixture text format, for seeding your
//! own fixture files:
//!
//!   cargo run --example export_fixture -- cube > cube.poly
//!   projave validate-fixture --path cube.poly
//!
//! Bodies: cube | cross | simplex | ball<level>

use projave::bodies::Polytope;
use projave::harness::format_polytope_fixture;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "cube".into());
    let polytope = match name.as_str() {
        "cube" => Polytope::cube(3),
        "cross" => Polytope::cross_polytope(3),
        "simplex" => Polytope::regular_simplex3(),
        other => {
            if let Some(level) = other.strip_prefix("ball") {
                let level: usize = level.parse().unwrap_or(2);
                Polytope::ball_approx(level)
            } else {
                eprintln!("unknown body '{other}'; use cube | cross | simplex | ball<level>");
                std::process::exit(2);
            }
        }
    };
    print!("{}", format_polytope_fixture(&polytope));
}
