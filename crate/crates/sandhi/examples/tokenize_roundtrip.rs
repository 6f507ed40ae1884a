//! IAST text to letter codes and back.
//!
//! The coding follows the traditional aphorism ordering of the alphabet,
//! so e.g. all soft aspirates sit in one contiguous band. `_` forces a
//! token boundary where spellings would otherwise merge ("a_i" is a+i,
//! "ai" is the single letter ai).
//!
//! ```bash
//! cargo run --example tokenize_roundtrip
//! ```

use sandhi::alphabet::{detokenize, tokenize};

fn main() {
    for text in ["devendra", "ai", "a_i", "kaḥ", "tacchiva", "k_ha", "l̥", "la"] {
        let codes = tokenize(text).unwrap();
        let shown: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
        let back = detokenize(&codes).unwrap();
        println!("{text:10} -> [{}] -> {back}", shown.join(", "));
        assert_eq!(back, text);
    }

    // lexical errors carry the byte offset of the offending character
    let err = tokenize("devaQindra").unwrap_err();
    println!("devaQindra -> error: {err}");
}
