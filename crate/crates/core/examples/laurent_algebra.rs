//! Laurent polynomial arithmetic, specializations and the h-expansion.

use genus2::laurent::{h_expansion, LMTable, LaurentVZ};

fn main() {
    // ambient Homfly of the right-handed trefoil
    let trefoil = LaurentVZ::from_terms([((2, 0), 2), ((4, 0), -1), ((2, 2), 1)]);
    println!("P = {trefoil}");
    println!("P0 = {}", trefoil.p0());
    println!("v = s^2: {}", trefoil.substitute_v_power(2).unwrap());
    println!("v = s^3: {}", trefoil.substitute_v_power(3).unwrap());

    let sq = &trefoil * &trefoil;
    println!("P^2 = {sq}");

    let series = h_expansion(&trefoil, 4).unwrap();
    for (d, c) in series.coefficients().iter().enumerate() {
        println!("h^{d}: {c}");
    }

    let table = LMTable::from_laurent(&trefoil).unwrap();
    print!("{}", table.render("trefoil"));
    assert_eq!(table.to_laurent(), trefoil);
}
