#pragma once

// Model-comparison games between structures, between pointed Kripke structures, and
// between forest structures. Every solver reports a winner plus Duplicator's strategy.

#include "gc/ef.hpp"
#include "gc/forest.hpp"
#include "gc/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gc {

enum class Winner { spoiler, duplicator };
/// ep: Spoiler plays in the left structure only, partial homomorphisms win.
/// full: Spoiler plays on either side, partial isomorphisms win.
/// count: Duplicator commits to a bijection each round, partial isomorphisms win.
enum class GameMode { ep, full, count };
enum class GameKind { ef, pebble, modal, arboreal };
enum class Side { left, right };

std::string to_string(Winner w);
std::string to_string(GameMode m);
std::optional<GameMode> parse_game_mode(std::string_view s);

/// A position: for EF games the pairs in play order; for pebble games one slot per pebble;
/// for modal games a single slot with the current states; for the path game the ends of
/// the two chains (empty slot for the empty chain).
using Position = std::vector<std::optional<Pair>>;

struct SpoilerMove {
    Side side = Side::left;
    std::size_t slot = 0;     // pebble index (0-based) for pebble games; unused otherwise
    std::size_t relation = 0; // transition relation for modal games
    Element element = 0;      // chosen element; unused for bijective moves
};

struct StrategyEntry {
    Position position;
    std::size_t rounds_left = 0; // 0 for unbounded pebble games
    SpoilerMove move;
    /// Duplicator's answer to `move`. For bijective modes `bijection` holds the whole
    /// committed map (left element -> right element) and `response` is unused.
    Element response = 0;
    std::vector<Element> bijection;
};

struct GameResult {
    GameKind kind = GameKind::ef;
    GameMode mode = GameMode::full;
    Winner winner = Winner::spoiler;
    std::size_t bound = 0;                     // rounds (EF, modal) or pebbles
    std::optional<std::size_t> rounds;         // pebble games: set when round-bounded
    std::vector<StrategyEntry> strategy;       // Duplicator's strategy on reachable positions

    bool duplicator_wins() const noexcept { return winner == Winner::duplicator; }
};

/// k-round EF game by backward induction over position sets.
GameResult solve_ef_game(const Structure& a, const Structure& b, std::size_t k, GameMode mode);

struct PebbleOptions {
    std::optional<std::size_t> rounds; // bounded-round variant (diagnostics)
    bool parallel = true;              // Jacobi sweeps in parallel; false uses the serial reference
    bool with_strategy = true;
};

/// k-pebble game from the empty position, decided as a greatest fixpoint over pebbled
/// partial maps. For mode ep this is the k-consistency test for hom(P_k A, B).
GameResult solve_pebble_game(const Structure& a, const Structure& b, std::size_t k, GameMode mode,
                             const PebbleOptions& options = {});

/// k-round bisimulation game between the points: Spoiler follows a transition on one side,
/// Duplicator the same relation on the other. Propositions must agree (ep: be preserved).
/// In count mode Duplicator commits to a bijection between the successor sets.
GameResult solve_modal_game(const Structure& k1, const Structure& k2, std::size_t rounds, GameMode mode);

/// Path game on two forest structures: positions are pairs of root chains of equal length
/// with isomorphic induced substructures, Spoiler extends either chain by one cover step
/// and Duplicator must extend the other. Solved as a greatest fixpoint.
GameResult solve_arboreal_game(const ForestStructure& f1, const ForestStructure& f2);

/// Replays an existential EF strategy into the cover: [a1..ai] goes to Duplicator's answer
/// to ai after a1..a(i-1). Throws PreconditionError unless `r` is a Duplicator win of the
/// existential EF game with bound cover.bound.
ElementMap strategy_to_cokleisli(const GameResult& r, const Structure& a, const Structure& b, const EFCover& cover);

/// Adversarial replay: follows the table against every Spoiler line within the bound and
/// confirms every reached position satisfies the winning condition. Only for EF and modal
/// strategies (pebble strategies are checked position-wise).
bool replay_strategy(const GameResult& r, const Structure& a, const Structure& b);

/// For pebble strategies: every table position wins and every answer stays inside the table.
bool strategy_closed(const GameResult& r, const Structure& a, const Structure& b);

} // namespace gc
