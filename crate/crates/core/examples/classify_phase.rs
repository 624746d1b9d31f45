//! Classifies a few parameter points and prints the limiting spread.
//!
//! cargo run --example classify_phase -- pi/3 pi/2 0.5

use oqw::walk::AngleSpec;
use oqw::{parse_angle, sigma_limit, WalkParameters};

fn main() -> oqw::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let points: Vec<[String; 3]> = if args.len() == 3 {
        vec![[args[0].clone(), args[1].clone(), args[2].clone()]]
    } else {
        [
            ["2*pi/7", "arcsin(c0/s0)", "0.5"],
            ["pi/3", "pi/2", "0.5"],
            ["pi/2", "pi/3", "0.5"],
            ["pi/6", "pi/3", "0.5"],
            ["pi/4", "pi/2", "0.5"],
        ]
        .map(|p| p.map(String::from))
        .to_vec()
    };

    for [a, b, p] in points {
        let theta0 = parse_angle(&a)?.resolve(None)?;
        let theta1: AngleSpec = b.parse()?;
        let p: f64 = p.parse().map_err(|_| oqw::Error::Parse {
            what: "p",
            text: p.clone(),
        })?;
        let report = sigma_limit(&WalkParameters::new(
            theta0,
            theta1.resolve(Some(theta0))?,
            p,
        )?)?;
        println!(
            "{a:>8} {b:>14}  {:<32} sigma ~ {:.6} t^{}",
            report.class.to_string(),
            report.limit_constant,
            report.scaling_exponent
        );
    }
    Ok(())
}
