use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use dispersable_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dsp_last_error_message()) }.to_string_lossy().into_owned()
}

unsafe fn named(name: &str, params: &[usize]) -> *mut DspGraph {
    let mut g = ptr::null_mut();
    let st = dsp_graph_from_name(c(name).as_ptr(), params.as_ptr(), params.len(), &mut g);
    assert_eq!(st, DspStatus::Ok, "{}", last_error());
    g
}

#[test]
fn graph_handles() {
    unsafe {
        let g = named("heawood", &[]);
        assert_eq!(dsp_graph_vertex_count(g), 14);
        assert_eq!(dsp_graph_edge_count(g), 21);
        assert_eq!(dsp_graph_max_degree(g), 3);
        dsp_graph_free(g);

        let mut g = ptr::null_mut();
        assert_eq!(dsp_graph_from_text(c("3 2\n0 1\n1 2\n").as_ptr(), &mut g), DspStatus::Ok);
        assert_eq!(dsp_graph_edge_count(g), 2);
        dsp_graph_free(g);
        dsp_graph_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(dsp_graph_from_text(ptr::null(), &mut g), DspStatus::NullPointer);
        assert_eq!(dsp_graph_from_text(c("2 1\n0 0\n").as_ptr(), &mut g), DspStatus::ParseError);
        assert!(last_error().contains("loop"), "{}", last_error());
        assert_eq!(dsp_graph_from_name(c("nosuch").as_ptr(), ptr::null(), 0, &mut g), DspStatus::InvalidInput);
        assert_eq!(dsp_graph_from_name(c("prism").as_ptr(), ptr::null(), 1, &mut g), DspStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(dsp_graph_from_text(bad.as_ptr().cast(), &mut g), DspStatus::InvalidUtf8);
        assert!(g.is_null());
        assert_eq!(dsp_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn decide_verify_and_text_round_trip() {
    unsafe {
        let g = named("cube", &[]);
        let (mut pages, mut emb) = (0usize, ptr::null_mut());
        assert_eq!(dsp_decide(g, 3, 4, true, 0.0, &mut pages, &mut emb), DspStatus::Ok);
        assert_eq!(pages, 3);
        assert_eq!(dsp_embedding_page_count(emb), 3);
        assert_eq!(dsp_verify(g, emb, true), DspStatus::Ok);
        assert_eq!(last_error(), "");

        let mut text = ptr::null_mut();
        assert_eq!(dsp_embedding_to_text(g, emb, &mut text), DspStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(dsp_embedding_from_text(g, text, &mut back), DspStatus::Ok);
        assert_eq!(dsp_verify(g, back, true), DspStatus::Ok);
        dsp_string_free(text);

        let mut svg = ptr::null_mut();
        assert_eq!(dsp_render_svg(g, emb, &mut svg), DspStatus::Ok);
        assert!(CStr::from_ptr(svg).to_str().unwrap().contains("<svg"));
        dsp_string_free(svg);

        assert_eq!(dsp_decide(g, 2, 2, true, 0.0, &mut pages, &mut emb), DspStatus::NotFound);
        assert_eq!(dsp_decide(g, 3, 2, true, 0.0, &mut pages, &mut emb), DspStatus::InvalidInput);
        dsp_embedding_free(back);
        dsp_embedding_free(emb);
        dsp_graph_free(g);
    }
}

#[test]
fn verification_failure_is_reported() {
    unsafe {
        let g = named("complete", &[4]);
        let one_page = "1\n0 1 2 3\n0 1 0\n0 2 0\n0 3 0\n1 2 0\n1 3 0\n2 3 0\n";
        let mut emb = ptr::null_mut();
        assert_eq!(dsp_embedding_from_text(g, c(one_page).as_ptr(), &mut emb), DspStatus::Ok);
        assert_eq!(dsp_verify(g, emb, false), DspStatus::VerificationFailed);
        assert!(last_error().contains("Crossing"), "{}", last_error());
        dsp_embedding_free(emb);
        dsp_graph_free(g);
    }
}

#[test]
fn barnette_layout() {
    let rs = dispersable_core::generators::barnette_instance("hexagonal-prism", None).unwrap();
    let gtext = dispersable_core::io::write_graph(rs.graph());
    let rtext = dispersable_core::io::write_rotation(&rs);
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(dsp_graph_from_text(c(&gtext).as_ptr(), &mut g), DspStatus::Ok);
        let mut emb = ptr::null_mut();
        assert_eq!(dsp_barnette(g, c(&rtext).as_ptr(), &mut emb), DspStatus::Ok, "{}", last_error());
        assert_eq!(dsp_verify(g, emb, true), DspStatus::Ok);
        dsp_embedding_free(emb);
        assert_eq!(dsp_barnette(g, c("0: 1 2").as_ptr(), &mut emb), DspStatus::ParseError);
        dsp_graph_free(g);

        let k4 = named("complete", &[4]);
        let rot = "0: 0 1 2\n1: 0 3 4\n2: 1 5 3\n3: 2 4 5\n";
        assert_eq!(dsp_barnette(k4, c(rot).as_ptr(), &mut emb), DspStatus::InvalidInput);
        dsp_graph_free(k4);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/dispersable.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["dsp_graph_from_text", "dsp_decide", "dsp_barnette", "dsp_last_error_message", "DSP_STATUS_NOT_FOUND"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"]).arg(&header).status()
    else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(status.success());
}
