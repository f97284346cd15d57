//! Field arithmetic: GF(9) by its coefficient vectors, Frobenius, traces and
//! square classes.

use polar_srg::gf::{Field, SquareClass, SubfieldEmbedding};

fn main() -> polar_srg::Result<()> {
    let f = Field::shared(3, 2)?;
    println!("GF(9), modulus {:?}", f.modulus());
    let w = f.primitive_element();
    for k in 0..8 {
        let x = f.exp(k);
        let class = match f.square_class(x)? {
            SquareClass::Square => "square",
            _ => "nonsquare",
        };
        println!("w^{k} = {:?}  frob = {:?}  {class}", f.coeffs(x), f.coeffs(f.frobenius(x, 1)));
    }
    println!("w = {:?} has order {:?}", f.coeffs(w), f.mult_order(w));

    let sub = Field::shared(2, 2)?;
    let sup = Field::shared(2, 6)?;
    let emb = SubfieldEmbedding::new(sub, sup.clone())?;
    let x = sup.exp(5);
    println!("Tr_(64/4)(w^5) = {:?}", emb.sub().coeffs(emb.trace(x)?));
    Ok(())
}
