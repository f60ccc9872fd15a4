#!/usr/bin/env python3
"""
trifst Installation Validation Script

Checks that the package imports and that the filters, 3-way composition
and the two applications give their known answers.
"""
import sys
from pathlib import Path

# Add trifst to path
sys.path.insert(0, str(Path(__file__).parent))


def validate_imports():
    """Validate all core imports"""
    print("=" * 60)
    print("trifst Validation")
    print("=" * 60)
    print("\n1. Testing imports...")

    try:
        from trifst.core.engine import TrifstEngine
        from trifst.skills.composition import compose, compose3
        from trifst.skills.filters import filter_m, filter_w
        from trifst.skills.applications import edit_distance, ngram_kernel
        from trifst.utils.logger import setup_logger

        print("   ✅ All core modules imported successfully")
        return True
    except Exception as e:
        print(f"   ❌ Import failed: {e}")
        return False


def test_filters():
    """Test ε-filter uniqueness on small grids"""
    print("\n2. Testing ε-filters...")

    try:
        from trifst.skills.filters import filter_m, filter_w
        from trifst.skills.filters.grid import count_grid_paths, grid_unique_path_check

        total, accepted = count_grid_paths(filter_m(), (0, 0), (2, 2))
        assert (total, accepted) == (13, 1)
        assert grid_unique_path_check(filter_w(), (2, 2, 2))

        print(f"   ✅ Filters work (M: 3 states, W: {filter_w().num_states} states)")
        return True
    except Exception as e:
        print(f"   ❌ Filter test failed: {e}")
        return False


def test_composition():
    """Test that 3-way composition matches the cascade"""
    print("\n3. Testing 3-way composition...")

    try:
        from trifst.core.algorithms import equivalent_by_evaluation
        from trifst.core.transducer import random_acyclic
        from trifst.skills.composition import compose, compose3

        T1, T2, T3 = (random_acyclic(5, 2, seed=seed) for seed in (1, 2, 3))
        R, counters = compose3(T1, T2, T3)
        assert equivalent_by_evaluation(R, compose(compose(T1, T2), T3), max_len=3)

        print(f"   ✅ compose3 matches the cascade ({counters.states_expanded} states expanded)")
        return True
    except Exception as e:
        print(f"   ❌ Composition test failed: {e}")
        import traceback
        traceback.print_exc()
        return False


def test_applications():
    """Test edit distance and the n-gram kernel on worked examples"""
    print("\n4. Testing applications...")

    try:
        from trifst.core.semiring import TROPICAL
        from trifst.core.transducer import linear_acceptor
        from trifst.skills.applications import EditCosts, edit_distance, ngram_kernel
        from trifst.utils.helpers import string_to_labels

        ab = linear_acceptor(string_to_labels("ab"), TROPICAL)
        ba = linear_acceptor(string_to_labels("ba"), TROPICAL)
        distance = edit_distance(ab, ba, EditCosts(transposition=1.0))
        assert distance == 1.0

        kernel = ngram_kernel(linear_acceptor(string_to_labels("abab")),
                              linear_acceptor(string_to_labels("ab")), 2)
        assert abs(kernel - 6.0) < 1e-9

        print(f"   ✅ Applications work (d(ab, ba) = {distance:g}, k(abab, ab) = {kernel:g})")
        return True
    except Exception as e:
        print(f"   ❌ Application test failed: {e}")
        return False


def test_engine_initialization():
    """Test engine initialization"""
    print("\n5. Testing engine initialization...")

    try:
        from trifst.core.engine import TrifstEngine

        engine = TrifstEngine()

        assert engine.compose_config
        assert engine.apps_config
        assert engine.bench_config

        print(f"   ✅ Engine initialized (strategy {engine.strategy.value}, filter {engine.filter_mode})")
        return True
    except Exception as e:
        print(f"   ❌ Engine initialization failed: {e}")
        return False


def main():
    """Run all validation checks"""
    tests = [
        validate_imports,
        test_filters,
        test_composition,
        test_applications,
        test_engine_initialization
    ]

    results = []
    for test in tests:
        try:
            results.append(test())
        except Exception as e:
            print(f"   ❌ Test crashed: {e}")
            results.append(False)

    # Summary
    print("\n" + "=" * 60)
    print("Validation Summary")
    print("=" * 60)
    passed = sum(results)
    total = len(results)

    print(f"\nTests passed: {passed}/{total}")

    if all(results):
        print("\n✅ All validation tests passed!")
        print("\nNext steps:")
        print("1. Run the test suite: pytest trifst/tests")
        print("2. Try the CLI: trifst bench --scenario editdist --size 30")
        return 0
    else:
        print("\n⚠️  Some tests failed. Please check the errors above.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
