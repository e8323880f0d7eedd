use sqcat::k0::{smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    let r = smith_normal_form(&a);
    print!("A =\n{a}D =\n{}U =\n{}V =\n{}", r.d, r.u, r.v);
    println!("verified: {}", r.verify(&a));
}
