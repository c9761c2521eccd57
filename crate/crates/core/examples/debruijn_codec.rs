//! Encodes every binary de Bruijn sequence of degree 3 and decodes it back.

use linetree::codec::{decode, encode, enumerate_db_sequences, seq_to_path};

fn main() -> linetree::Result<()> {
    let n = 3;
    let seqs = enumerate_db_sequences(n)?;
    for b in &seqs {
        let s = encode(b)?;
        let back = decode(&s, n)?;
        assert_eq!(&back, b);
        println!("{b} -> {s}  path {}", seq_to_path(b).labels().join(" "));
    }
    println!("{} sequences, {} codes", seqs.len(), 1 << (1 << (n - 1)));
    Ok(())
}
