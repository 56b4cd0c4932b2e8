"""Generated lemma scripts: acceptance, structure, and soundness bridge."""

import pytest

from dtw.errors import BadParamsError
from dtw.formula import (
    Blame,
    Implies,
    Know,
    Prop,
    big_disj,
    coalition,
    conj,
    dual_know,
    falsum,
    iff,
)
from dtw.lemmas import (
    bundled_library,
    bundled_scripts,
    gen_lemma1,
    gen_lemma2,
    gen_lemma3,
    gen_lemma4,
    gen_lemma5,
    gen_lemma6,
    gen_lemma7,
    gen_lemma_script,
)
from dtw.proof import (
    Hypothesis,
    ModusPonens,
    ScriptBuilder,
    Theorem,
    apply_deduction_theorem,
    check_proof,
)
from dtw.semantics import SearchBounds, valid_in_game

from oracles import naive_valid

p, q, r = Prop("p"), Prop("q"), Prop("r")
A, B, C = coalition("a"), coalition("b"), coalition("c")


def mp_chain(names):
    atoms = [Prop(n) for n in names]
    hyps = [atoms[0]]
    for i in range(len(atoms) - 1):
        hyps.append(Implies(atoms[i], atoms[i + 1]))
    b = ScriptBuilder(hyps)
    cur = b.hyp(0)
    for i in range(1, len(hyps)):
        step = b.hyp(i)
        cur = b.mp(cur, step)
    return b.build(prune=False)


class TestGenerators:
    def test_lemma1_goals_and_acceptance(self):
        script = gen_lemma1(A, mp_chain(["p", "q"]))
        assert script.hypotheses == (Know(A, p), Know(A, Implies(p, q)))
        assert script.goal == Know(A, q)
        assert check_proof(script).accepted

    def test_lemma1_n3(self):
        script = gen_lemma1(A, mp_chain(["p", "q", "r"]))
        assert script.goal == Know(A, r)
        assert len(script.hypotheses) == 3
        assert check_proof(script).accepted

    def test_lemma2_goal(self):
        script = gen_lemma2(A, p)
        assert script.goal == Implies(Know(A, p), Know(A, Know(A, p)))
        assert script.hypotheses == ()
        assert check_proof(script).accepted

    def test_lemma3_goal_and_line_bound(self):
        script = gen_lemma3(A, B, p)
        blame = Blame(A, B, p)
        assert script.goal == Implies(dual_know(A, blame),
                                      Implies(p, blame))
        assert len(script.lines) <= 15
        assert check_proof(script).accepted

    def test_lemma4_from_tautological_equivalence(self):
        eq = ScriptBuilder()
        eq.taut(iff(conj(p, q), conj(q, p)))
        script = gen_lemma4(A, B, eq.build())
        assert script.goal == Implies(Blame(A, B, conj(p, q)),
                                      Blame(A, B, conj(q, p)))
        assert check_proof(script).accepted

    def test_lemma4_rejects_non_biconditional(self):
        eq = ScriptBuilder()
        eq.taut(Implies(p, p))
        with pytest.raises(BadParamsError):
            gen_lemma4(A, B, eq.build())

    def test_lemma5_shape(self):
        script = gen_lemma5(A, p)
        assert script.hypotheses == (p,)
        assert script.goal == dual_know(A, p)
        assert len(script.lines) == 5
        assert check_proof(script).accepted

    def test_lemma6_n0_is_taut_plus_hypothesis(self):
        script = gen_lemma6([], [], [])
        assert script.hypotheses == (falsum(),)
        assert script.goal == Blame(coalition(), coalition(), falsum())
        assert len(script.lines) == 3
        assert check_proof(script).accepted

    def test_lemma6_n1_is_lemma3_plus_two_mp(self):
        script = gen_lemma6([A], [B], [p])
        inner = gen_lemma3(A, B, p)
        # the embedded derivation, then exactly two modus ponens steps on
        # the two hypotheses
        assert len(script.lines) == len(inner.lines) + 4
        tail = script.lines[-4:]
        assert isinstance(tail[0].justification, Hypothesis)
        assert isinstance(tail[1].justification, ModusPonens)
        assert isinstance(tail[2].justification, Hypothesis)
        assert isinstance(tail[3].justification, ModusPonens)
        assert script.goal == Blame(A, B, p)
        assert check_proof(script).accepted

    @pytest.mark.parametrize("n", [2, 3])
    def test_lemma6_general(self, n):
        knowers = [A, B, C][:n]
        actors = [A, B, C][:n]
        chis = [p, q, r][:n]
        script = gen_lemma6(knowers, actors, chis)
        union = frozenset().union(*knowers)
        disjunction = big_disj(chis)
        assert script.goal == Blame(union, union, disjunction)
        assert script.hypotheses[-1] == disjunction
        assert check_proof(script).accepted

    def test_lemma6_rejects_overlapping_actor_sets(self):
        with pytest.raises(BadParamsError):
            gen_lemma6([A, B], [A, A], [p, q])

    def test_lemma7_n2(self):
        script = gen_lemma7(
            {"a", "b"}, {"a", "c"}, [A, B], [A, C], [q, r], p
        )
        big_c = coalition({"a", "b"})
        big_d = coalition({"a", "c"})
        assert script.goal == Know(
            big_c, Implies(p, Blame(big_c, big_d, p))
        )
        assert script.hypotheses[-1] == Know(big_c, Implies(p, big_disj([q, r])))
        assert check_proof(script).accepted

    def test_lemma7_n0(self):
        script = gen_lemma7({"a"}, {"b"}, [], [], [], p)
        assert check_proof(script).accepted

    def test_lemma7_enforces_containment(self):
        with pytest.raises(BadParamsError):
            gen_lemma7({"a"}, {"c"}, [B], [C], [q], p)

    def test_dispatch(self):
        script = gen_lemma_script("lemma3", knowers=A, actors=B, phi=p)
        assert check_proof(script).accepted
        with pytest.raises(BadParamsError):
            gen_lemma_script("lemma9")


class TestBundledCorpus:
    def test_everything_accepted(self):
        scripts = bundled_scripts()
        library = bundled_library()
        for name, script in scripts.items():
            result = check_proof(script, library)
            assert result.accepted, f"{name}: {result}"

    def test_theorem_citation_variant_uses_the_library(self):
        scripts = bundled_scripts()
        cite = scripts["lemma6_n1_thm"]
        assert any(isinstance(l.justification, Theorem) for l in cite.lines)
        assert not check_proof(cite).accepted  # without the library
        assert check_proof(cite, bundled_library()).accepted

    def test_deduction_on_lemma1_pipeline(self):
        premises = mp_chain(["p", "q"])
        out = apply_deduction_theorem(premises)
        assert out.hypotheses == (p,)
        assert out.goal == Implies(Implies(p, q), q)
        assert check_proof(out).accepted


class TestSoundnessBridge:
    def test_hypothesis_free_goals_valid_on_sampled_games(self):
        import random as random_module
        import warnings

        from dtw.semantics import sample_game

        goals = [s.goal for s in bundled_scripts().values() if not s.hypotheses]
        assert goals
        bounds = SearchBounds(max_agents=3, max_initial=3, max_actions=2,
                              max_outcomes=2, max_props=3, mode="random",
                              seed=0)
        for seed in range(25):
            rng = random_module.Random(seed)
            # the goals mention agents a, b, c; sample games over exactly them
            game = sample_game(rng, bounds, agents=("a", "b", "c"))
            with warnings.catch_warnings():
                # goals mention propositions some sampled games lack; they
                # are then false everywhere, which soundness must survive
                warnings.simplefilter("ignore", UserWarning)
                for goal in goals:
                    verdict = valid_in_game(game, goal)
                    assert verdict.holds, f"seed {seed}: {goal}"
                    assert naive_valid(game, goal)
