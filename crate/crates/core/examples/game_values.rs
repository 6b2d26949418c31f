//! Canonical games in slash notation: parse, add, compare, print.

use domineering::GameStore;

fn main() {
    let store = GameStore::new();
    let g = store.parse("{3|3/2||1|-1/2|||-1}").unwrap();
    let h = store.parse("{1|-1}").unwrap();

    let sum = store.add(g, h).unwrap();
    println!("G     = {}", store.display(g));
    println!("G + H = {}", store.display(sum));
    println!("G vs H: {}", store.compare(g, h));
    println!("3G    = {}", store.display(store.multiply_int(3, g).unwrap()));

    println!("outcome of G: {}", store.outcome(g));

    // canonical forms are interned, so equal games share a handle
    let other_way = store.add(h, g).unwrap();
    println!("G + H and H + G: handles {} and {}", sum.id(), other_way.id());
}
