"""Critter mine game: a block-language interpreter, mutation engine and
deterministic tower-defense simulation where mines are test cases."""

from .blocks import (
    And,
    Assert,
    Assign,
    Attr,
    AttrRef,
    BinOp,
    Color,
    ColorLit,
    Compare,
    CritterProgram,
    Equals,
    If,
    InputRef,
    IntLit,
    KindMismatch,
    NodePath,
    Not,
    Or,
    PathInvalid,
    Pred,
    Predicate,
    Satisfies,
    TestProgram,
    Texture,
    TextureIs,
    VarRef,
    path,
    replace,
    resolve,
    walk,
)
from .board import Board, enumerate_routes, distance_field, make_board, random_route, walkable
from .engine import (
    GameConfig,
    GameState,
    Mine,
    ScoreReport,
    new_game,
    run_to_completion,
    score,
    tick,
)
from .interp import (
    CritterState,
    TestVerdict,
    TileInput,
    eval_test,
    init_state,
    is_prime,
    step_loop,
)
from .levels import Category, Leaderboard, Level, LevelStore, submit_score, validate
from .mutation import (
    Mutant,
    Mutation,
    MutationClass,
    apply,
    enumerate_mutations,
    explain,
    make_mutant,
)
from .analysis import (
    analyze_level,
    equivalent_mutants,
    kill_matrix,
    minimal_mine_set,
    oracle_mine,
    state_envelope,
)
from .typecheck import TypeIssue, typecheck

__version__ = "0.1.0"
