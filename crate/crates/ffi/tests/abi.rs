use std::ffi::c_char;
use std::ptr;

use polar_grassmann::LinearCode;
use polar_grassmann_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let len = unsafe { pg_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..len.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn build_and_query_code() {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { pg_code_build(3, 2, 2, &mut code) }, PgStatus::Ok);
    unsafe {
        assert_eq!(pg_code_length(code), 315);
        assert_eq!(pg_code_dimension(code), 20);
        assert_eq!(pg_code_message_len(code), 21);

        let (mut rows, mut cols) = (0usize, 0usize);
        assert_eq!(pg_code_generator(code, ptr::null_mut(), 0, &mut rows, &mut cols), PgStatus::BufferTooSmall);
        assert_eq!((rows, cols), (21, 315));
        let mut g = vec![0u8; rows * cols];
        assert_eq!(pg_code_generator(code, g.as_mut_ptr(), g.len(), &mut rows, &mut cols), PgStatus::Ok);
        assert_eq!(g, LinearCode::build(3, 2, 2).unwrap().generator().data());

        let mut d = 0;
        assert_eq!(pg_code_min_distance(code, 1 << 22, &mut d), PgStatus::Ok);
        assert_eq!(d, 96);
        pg_code_free(code);
    }
}

#[test]
fn invalid_parameters_report_errors() {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { pg_code_build(2, 3, 3, &mut code) }, PgStatus::InvalidArgument);
    assert!(code.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { pg_code_build(2, 2, 6, &mut code) }, PgStatus::InvalidArgument);
    assert_eq!(unsafe { pg_code_build(2, 2, 3, ptr::null_mut()) }, PgStatus::NullPointer);
    assert_eq!(unsafe { pg_code_length(ptr::null()) }, 0);
    unsafe { pg_code_free(ptr::null_mut()) };
}

#[test]
fn encode_checks_inputs() {
    let mut code = ptr::null_mut();
    unsafe {
        assert_eq!(pg_code_build(2, 2, 3, &mut code), PgStatus::Ok);
        let mut out = vec![0u8; 40];
        let short = [0u8; 9];
        assert_eq!(pg_code_encode(code, short.as_ptr(), 9, out.as_mut_ptr(), 40), PgStatus::InvalidArgument);
        let bad = [3u8; 10];
        assert_eq!(pg_code_encode(code, bad.as_ptr(), 10, out.as_mut_ptr(), 40), PgStatus::InvalidArgument);
        assert_eq!(pg_code_encode(code, ptr::null(), 10, out.as_mut_ptr(), 40), PgStatus::NullPointer);
        let msg = [1u8, 0, 0, 0, 0, 0, 0, 0, 0, 2];
        assert_eq!(pg_code_encode(code, msg.as_ptr(), 10, out.as_mut_ptr(), 40), PgStatus::Ok);
        assert_eq!(out, LinearCode::build(2, 2, 3).unwrap().encode(&msg).unwrap());
        pg_code_free(code);
    }
}

#[test]
fn codec_round_trips() {
    let mut codec = ptr::null_mut();
    unsafe {
        assert_eq!(pg_codec_new(3, 2, &mut codec), PgStatus::Ok);
        assert_eq!(pg_codec_length(codec), 315);
        assert_eq!(pg_codec_message_len(codec), 21);
        let mut line = [0u8; 14];
        for i in 0..315 {
            assert_eq!(pg_codec_unrank(codec, i, line.as_mut_ptr(), 14), PgStatus::Ok);
            let mut back = u64::MAX;
            assert_eq!(pg_codec_rank(codec, line.as_ptr(), 14, &mut back), PgStatus::Ok);
            assert_eq!(back, i);
        }
        assert_eq!(pg_codec_unrank(codec, 315, line.as_mut_ptr(), 14), PgStatus::OutOfRange);

        // e0 is not singular, so no line through it is
        let not_singular = [1u8, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0];
        let mut idx = 0;
        assert_eq!(pg_codec_rank(codec, not_singular.as_ptr(), 14, &mut idx), PgStatus::NotTotallySingular);
        assert_eq!(pg_codec_rank(codec, not_singular.as_ptr(), 7, &mut idx), PgStatus::InvalidArgument);

        let msg = [1u8, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1];
        let mut word = vec![0u8; 315];
        assert_eq!(pg_codec_encode(codec, msg.as_ptr(), 21, word.as_mut_ptr(), 315), PgStatus::Ok);
        let sent = word.clone();
        word[100] ^= 1;
        let mut fixed = vec![0u8; 315];
        let (mut changed, mut ties) = (0, 0);
        assert_eq!(
            pg_codec_decode(codec, word.as_ptr(), 315, fixed.as_mut_ptr(), 315, &mut changed, &mut ties),
            PgStatus::Ok
        );
        assert_eq!(fixed, sent);
        assert_eq!((changed, ties), (1, 0));
        assert_eq!(
            pg_codec_decode(codec, word.as_ptr(), 314, fixed.as_mut_ptr(), 315, ptr::null_mut(), ptr::null_mut()),
            PgStatus::InvalidArgument
        );
        pg_codec_free(codec);
    }
}

#[test]
fn decode_unavailable_below_rank_three() {
    let mut codec = ptr::null_mut();
    unsafe {
        assert_eq!(pg_codec_new(2, 3, &mut codec), PgStatus::Ok);
        let word = [0u8; 40];
        let mut out = [0u8; 40];
        let s = pg_codec_decode(codec, word.as_ptr(), 40, out.as_mut_ptr(), 40, ptr::null_mut(), ptr::null_mut());
        assert_eq!(s, PgStatus::Unavailable);
        pg_codec_free(codec);
    }
}
