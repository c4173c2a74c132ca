use heislie::liecore::{joseph_generators, Family};
use heislie::minrep::MinRepFamily;

fn main() {
    let family = Family::So(5, 5);
    let fam = MinRepFamily::new(&family);
    let alg = fam.alg.clone();
    let gens = joseph_generators(&alg);
    let g = gens.last().unwrap();
    let mut op = heislie::diffop::DiffOp::zero(&fam.chart);
    for (word, c) in &g.terms {
        let mut t = heislie::diffop::DiffOp::one(&fam.chart).scale(c);
        for &bi in word {
            t = t.compose(&fam.dpi_basis(bi));
        }
        op = op.add(&t);
    }
    for (mi, p) in op.terms() {
        println!("{}: d^{mi:?} : {p}", alg.name());
    }
}
