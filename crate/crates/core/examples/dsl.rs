//! Read, validate and write `.acn` documents.
//!
//! ```bash
//! cargo run -p acnet --example dsl
//! ```

use acnet::dsl::{parse_document, parse_system, serialize_system};

const DOC: &str = "\
# a mutually catalytic pair fed from two food elements
food: a b
stimulus: light

reaction R2: a + ab -> aab cat ab
reaction R1: a + b -> ab cat aab, light
";

fn main() {
    let doc = parse_document(DOC).expect("valid document");
    for (id, line) in &doc.reaction_lines {
        println!("{id} declared on line {line}");
    }
    let canonical = serialize_system(&doc.system);
    println!("\ncanonical form:\n{canonical}");
    assert!(parse_system(&canonical).unwrap().same_structure(&doc.system));

    for broken in [
        "food:\n",
        "food: a\nreaction R: a + q7 -> b cat a\n",
        "food: a\nstimulus: s\nreaction R: s -> b cat a\n",
        "food: a\nreaction R a -> b\n",
    ] {
        match parse_system(broken) {
            Ok(_) => unreachable!(),
            Err(e) => println!("{:<48} => {e}", format!("{broken:?}")),
        }
    }
}
