//! Group law, chart and pairings at a few cutoffs.

use fuzzy_fluid::su2::{self, CutoffParam, GroupElement, PairingChoice};
use fuzzy_fluid::vec3;

fn main() -> fuzzy_fluid::Result<()> {
    let (k1, k2) = ([0.6, 0.0, 0.2], [0.0, 0.8, -0.1]);
    println!("k1 = {k1:?}, k2 = {k2:?}, k1×k2 = {:?}", vec3::cross(k1, k2));
    for a in [0.01, 0.05, 0.3, 1.0] {
        let c = CutoffParam::new(a)?;
        let g1 = GroupElement::from_momentum(k1, c);
        let k12 = su2::compose_momenta(k1, k2, c)?;
        let k21 = su2::compose_momenta(k2, k1, c)?;
        let back = g1.to_momentum(c)?;
        println!("a = {a}");
        println!("  g(k1)            = {g1:?}");
        println!("  chart roundtrip  = {:.2e}", vec3::norm(vec3::sub(back, k1)));
        println!("  k(g1 g2)         = {k12:.6?}");
        println!("  k12 - k21        = {:.6?}", vec3::sub(k12, k21));
        println!("  Haar weight(k1)  = {:.6}", su2::haar_weight(k1, c));
        for p in [PairingChoice::PolarizedTrace, PairingChoice::ChartDot] {
            println!("  B_{p}(k1, k2) = {:.6}", su2::pairing_momenta(k1, k2, c, p)?);
        }
    }
    Ok(())
}
