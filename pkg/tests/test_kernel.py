import random

import pytest

from ecckernel import (
    PROP,
    Context,
    Derivation,
    DerivationError,
    Judgment,
    Type,
    alpha_eq,
    check_context,
    infer_type,
    parse_context,
    parse_term,
    principal_of,
    subtype,
    to_full,
    trace_to_derivation,
    type_typing,
    universe_derivation,
    verify,
)

from corpus import typed_corpus
from genterms import strict_above


def test_axiom_accepts():
    d = Derivation("Ax", Judgment(Context(), PROP, Type(0)))
    assert verify(d)


def test_type_rule_requires_strict_increase():
    bad = Derivation(
        "T",
        Judgment(Context(), Type(0), Type(0)),
        (Derivation("Ax", Judgment(Context(), PROP, Type(0))),),
        level=0,
    )
    with pytest.raises(DerivationError):
        verify(bad)


def test_universe_derivations_verify():
    assert verify(universe_derivation(Context(), Type(2)))
    assert verify(universe_derivation(Context(), PROP))
    g = parse_context("x : Prop")
    d = universe_derivation(g, Type(0))
    assert verify(d)
    assert d.conclusion == Judgment(g, Type(0), Type(1))


def test_universe_derivation_conclusions():
    d = universe_derivation(Context(), Type(2))
    assert d.conclusion == Judgment(Context(), Type(2), Type(3))
    d = universe_derivation(Context(), PROP)
    assert d.conclusion == Judgment(Context(), PROP, Type(0))


def test_type_typing_lifts_prop_level_types():
    g = parse_context("p : Prop")
    d = type_typing(g, parse_term("p"))
    assert verify(d)
    assert d.conclusion.type == Type(0)
    assert d.rule == "Cum"


def test_trace_materialization_shapes():
    out = infer_type(Context(), parse_term("Sig x : Prop . Type0"))
    alg = trace_to_derivation(out)
    assert alg.rule == "Sigma'"
    assert alg.level == 1
    g = parse_context("f : Pi x : Type1 . Prop")
    check_context(g)
    alg2 = trace_to_derivation(infer_type(g, parse_term("f Prop")))
    assert alg2.rule == "App'"
    assert alg2.conclusion.type == PROP


def test_conv_nodes_carry_rho():
    g = parse_context("p2 : Sig g : Type0 . (fn Y : Type1 . Pi Z : Y . Prop) Type0")
    check_context(g)
    alg = trace_to_derivation(infer_type(g, parse_term("snd p2 Prop")))

    found = []

    def walk(node):
        if node.rule == "Conv":
            found.append(node)
        for p in node.premises:
            walk(p)

    walk(alg)
    assert found, "expected a conversion node in this trace"
    for node in found:
        assert node.rho is not None
        assert verify(node.rho)
        assert alpha_eq(node.rho.conclusion.subject, node.conclusion.type)


def test_expansion_preserves_conclusions():
    for g, m in typed_corpus():
        alg = trace_to_derivation(infer_type(g, m))
        full = to_full(alg)
        assert full.conclusion == alg.conclusion

        stack = [(alg, full)]
        while stack:
            a, f = stack.pop()
            assert f.conclusion == a.conclusion
            if a.rule in ("Pi2'", "Sigma'"):
                stack.append((a.premises[0], f.premises[0].premises[0]))
                stack.append((a.premises[1], f.premises[1].premises[0]))
            elif a.rule == "App'":
                stack.append((a.premises[0], f.premises[0]))
                stack.append((a.premises[1], f.premises[1].premises[0]))
            elif a.rule == "Pair'":
                stack.append((a.premises[0], f.premises[0].premises[0]))
                stack.append((a.premises[1], f.premises[1].premises[0]))
                stack.append((a.premises[2], f.premises[2]))
            elif a.rule == "Conv":
                stack.append((a.premises[0], f.premises[0]))


def test_conv_expansion_reuses_rho_verbatim():
    g = parse_context("p2 : Sig g : Type0 . (fn Y : Type1 . Pi Z : Y . Prop) Type0")
    check_context(g)
    alg = trace_to_derivation(infer_type(g, parse_term("snd p2 Prop")))
    full = to_full(alg)

    rhos = []

    def collect_rho(node):
        if node.rule == "Conv":
            rhos.append(node.rho)
        for p in node.premises:
            collect_rho(p)

    collect_rho(alg)

    reused = []

    def collect_cum(node):
        if node.rule == "Cum":
            reused.append(node.premises[1])
        for p in node.premises:
            collect_cum(p)

    collect_cum(full)
    for rho in rhos:
        assert any(rho is candidate for candidate in reused)


def test_end_to_end_soundness_on_corpus():
    for g, m in typed_corpus():
        outcome = infer_type(g, m)
        full = to_full(trace_to_derivation(outcome))
        assert verify(full)
        assert full.conclusion == Judgment(g, m, outcome.principal)


def test_principal_of_examples():
    tau, d = principal_of(Context(), PROP)
    assert tau == Type(0) and verify(d)
    tau, d = principal_of(Context(), parse_term("fn x : Prop . x"))
    assert alpha_eq(tau, parse_term("Pi x : Prop . Prop")) and verify(d)
    g = parse_context("f : Pi x : Type1 . Prop")
    check_context(g)
    tau, d = principal_of(g, parse_term("f Prop"))
    assert tau == PROP and verify(d)


def test_principality_under_deliberate_lifts():
    rng = random.Random(107)
    lifted = 0
    for g, m in typed_corpus():
        tau_prime, d = principal_of(g, m)
        tau = strict_above(rng, tau_prime)
        if tau is None:
            continue
        lift = Derivation(
            "Cum",
            Judgment(g, m, tau),
            (d, type_typing(g, tau)),
            sub=tau_prime,
            sup=tau,
        )
        assert verify(lift)
        again, _ = principal_of(g, m)
        assert again == tau_prime
        assert subtype(tau_prime, tau)
        lifted += 1
    assert lifted >= 20


def _mutations(d: Derivation):
    # structural single-node corruptions
    other_rule = {"App": "Pair", "Pair": "App", "Pi2": "Sigma", "Sigma": "Pi2"}.get(d.rule, "Cum" if d.rule != "Cum" else "App")
    yield Derivation(other_rule, d.conclusion, d.premises, d.level, d.sub, d.sup)
    if d.level is not None:
        yield Derivation(d.rule, d.conclusion, d.premises, d.level + 1, d.sub, d.sup)
    if len(d.premises) >= 2 and d.premises[0] != d.premises[1]:
        swapped = (d.premises[1], d.premises[0]) + d.premises[2:]
        yield Derivation(d.rule, d.conclusion, swapped, d.level, d.sub, d.sup)
    c = d.conclusion
    if c.type != Type(7):
        yield Derivation(d.rule, Judgment(c.ctx, c.subject, Type(7)), d.premises, d.level, d.sub, d.sup)


def test_single_node_corruption_is_rejected():
    g = parse_context("f : Pi x : Type1 . Prop")
    check_context(g)
    _, d = principal_of(g, parse_term("f Prop"))
    assert verify(d)

    rejected = 0
    for mutant in _mutations(d):
        with pytest.raises(DerivationError):
            verify(mutant)
        rejected += 1
    # corrupt a premise deep in the tree as well
    deep = d
    while deep.premises:
        deep = deep.premises[0]
        for mutant in _mutations(deep):
            rebuilt = _replace_first(d, deep, mutant)
            with pytest.raises(DerivationError):
                verify(rebuilt)
            rejected += 1
    assert rejected >= 8


def _replace_first(root: Derivation, target: Derivation, replacement: Derivation) -> Derivation:
    if root is target:
        return replacement
    new_premises = tuple(_replace_first(p, target, replacement) for p in root.premises)
    return Derivation(root.rule, root.conclusion, new_premises, root.level, root.sub, root.sup)


def test_false_subsumption_with_perfect_shape_is_rejected():
    # every structural check passes; only the semantic side condition fails
    g = Context()
    p1 = universe_derivation(g, Type(0))  # Type0 : Type1
    p2 = universe_derivation(g, Type(0))  # subject Type0 is the claimed target
    bad = Derivation(
        "Cum",
        Judgment(g, Type(0), Type(0)),
        (p1, p2),
        sub=Type(1),
        sup=Type(0),
    )
    with pytest.raises(DerivationError) as err:
        verify(bad)
    assert "side condition" in err.value.reason


def test_app_requires_exact_domain_not_mere_conversion():
    # the argument premise types N at a redex convertible to the domain;
    # the kernel rule demands the domain itself, with conversion explicit
    g = parse_context("f : Pi x : Type1 . Prop")
    check_context(g)
    _, good = principal_of(g, parse_term("f Prop"))
    arg_cum = good.premises[1]
    convertible = parse_term("(fn a : Type2 . a) Type1")
    loosened = Derivation(
        "Cum",
        Judgment(g, arg_cum.conclusion.subject, convertible),
        (arg_cum.premises[0], type_typing(g, convertible)),
        sub=arg_cum.sub,
        sup=convertible,
    )
    bad = Derivation(good.rule, good.conclusion, (good.premises[0], loosened))
    with pytest.raises(DerivationError) as err:
        verify(bad)
    assert err.value.path == "root"
    assert "exactly at the domain" in err.value.reason


def test_foreign_side_data_is_rejected():
    g = parse_context("f : Pi x : Type1 . Prop")
    check_context(g)
    _, d = principal_of(g, parse_term("f Prop"))
    decorated = Derivation(d.rule, d.conclusion, d.premises, d.level, sub=Type(3), sup=Type(4))
    with pytest.raises(DerivationError) as err:
        verify(decorated)
    assert "side pair" in err.value.reason
    leveled = Derivation(d.rule, d.conclusion, d.premises, level=2)
    with pytest.raises(DerivationError) as err:
        verify(leveled)
    assert "universe index" in err.value.reason


def test_verifier_checks_node_contexts():
    # a context whose entry is not a type must be rejected wherever it appears
    bad_ctx = Context.of(("x", parse_term("fn y : Prop . y")))
    d = Derivation("C", Judgment(bad_ctx, PROP, Type(0)),
                   (Derivation("Ax", Judgment(Context(), PROP, Type(0))),))
    with pytest.raises(DerivationError):
        verify(d)
