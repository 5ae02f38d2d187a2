use blowzeta::expr::GermExpr;
use proptest::prelude::*;

fn var() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "u1", "w_2"]).prop_map(String::from)
}

fn term() -> impl Strategy<Value = String> {
    (
        prop::option::of(1u32..50),
        prop::collection::vec((var(), prop::option::of(1u32..20), any::<bool>()), 1..4),
    )
        .prop_map(|(c, fs)| {
            let mut s = c.map(|c| format!("{c} * ")).unwrap_or_default();
            for (i, (v, e, star)) in fs.iter().enumerate() {
                if i > 0 {
                    s.push_str(if *star { "*" } else { " " });
                }
                s.push_str(v);
                if let Some(e) = e {
                    s.push_str(&format!("^{e}"));
                }
            }
            s
        })
}

fn expr() -> impl Strategy<Value = String> {
    (any::<bool>(), term(), prop::collection::vec((any::<bool>(), term()), 0..4)).prop_map(|(neg, t, rest)| {
        let mut s = if neg { format!("-{t}") } else { t };
        for (minus, t) in rest {
            s.push_str(if minus { " - " } else { "+" });
            s.push_str(&t);
        }
        s
    })
}

proptest! {
    #[test]
    fn render_round_trips(s in expr()) {
        let e = GermExpr::parse(&s).unwrap();
        let again = GermExpr::parse(&e.to_string()).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn garbage_never_panics(s in "[xyz0-9^*+\\- ()a]{0,24}") {
        if let Err(e) = GermExpr::parse(&s) {
            prop_assert!(e.pos <= s.chars().count());
        }
    }
}

#[test]
fn error_positions_point_at_the_fault() {
    let e = GermExpr::parse("x^2 + y^").unwrap_err();
    assert_eq!(e.pos, 8);
    let e = GermExpr::parse("x^2 ++ y").unwrap_err();
    assert_eq!(e.pos, 5);
    assert!(e.to_string().contains("column 6"));
}
