//! Commutator and associator of the induced star product.

use fuzzy_fluid::star::StarProduct;
use fuzzy_fluid::{ClebschState, CutoffParam, MomentumGrid};

fn main() -> fuzzy_fluid::Result<()> {
    for a in [0.0, 0.01, 0.05, 0.2] {
        let grid = MomentumGrid::new(1.0, 3.0, CutoffParam::new(a)?)?;
        let s = ClebschState::random(&grid, 1, 1.5, 1.0);
        let t = ClebschState::random(&grid, 2, 1.5, 1.0);
        let sp = StarProduct::new(&grid);
        let (_, lost) = sp.star_with_loss(&s.lambda, &s.mu);
        let c = sp.commutator(&s.lambda, &s.mu).l2_norm2(&grid).sqrt();
        let assoc = sp.associator_norm(&s.lambda, &s.mu, &t.lambda);
        println!("a = {a:<5} |[f,g]*| = {c:.4e}  |assoc| = {assoc:.4e}  aliasing = {lost:.3e}");
    }
    Ok(())
}
