//! Regenerates include/gbsc.h from the annotated sources; the committed
//! header is the build artifact C consumers include.

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR");
    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("GBSC_H".into()),
        cpp_compat: true,
        documentation: true,
        header: Some("/* C interface for the gbsc graph coloring library. */".into()),
        ..Default::default()
    };
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen generates the header")
        .write_to_file(std::path::Path::new(&crate_dir).join("include/gbsc.h"));
    println!("cargo:rerun-if-changed=src/lib.rs");
}
