use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("moralframes.h");

    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.cpp_compat = true;
    config.include_guard = Some("MORALFRAMES_H".to_string());
    config.usize_is_size_t = true;
    config.documentation = true;
    config.header =
        Some("/* C interface for the moralframes library. Generated by cbindgen. */".to_string());

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("failed to generate C header")
        .write_to_file(header);

    println!("cargo:rerun-if-changed=src/lib.rs");
}
