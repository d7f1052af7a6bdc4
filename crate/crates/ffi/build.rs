use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = PathBuf::from(&crate_dir).join("include").join("sofa_bnb.h");
    generate(&crate_dir, &header);
}

/// Regenerate the C header from the Rust source. The generated file is
/// committed, so builds without the `generate-header` feature (or where
/// cbindgen misbehaves) fall back to it unchanged.
#[cfg(feature = "generate-header")]
fn generate(crate_dir: &str, header: &std::path::Path) {
    match cbindgen::generate(crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(e) => {
            println!("cargo:warning=cbindgen failed ({e}); using the committed header");
            assert!(header.exists(), "cbindgen failed and no committed header exists");
        }
    }
}

#[cfg(not(feature = "generate-header"))]
fn generate(_crate_dir: &str, header: &std::path::Path) {
    assert!(header.exists(), "header generation disabled and no committed header exists");
}
