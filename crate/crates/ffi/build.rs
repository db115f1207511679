fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("manifest dir");
    let header = std::path::Path::new(&crate_dir).join("include/octo.h");
    std::fs::create_dir_all(header.parent().unwrap()).expect("include dir");
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(cbindgen::Config::from_file(
            std::path::Path::new(&crate_dir).join("cbindgen.toml"),
        ).expect("cbindgen.toml parses"))
        .generate()
        .expect("header generation")
        .write_to_file(header);
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
