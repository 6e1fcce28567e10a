/**
 * @file tables.hpp
 * @brief The threshold comparison tables as exact data.
 *
 * Table 1 compares s_pr against s_hhl per equation and degree class; its
 * cells are formulas in (d, p) except for the two constant wave/
 * Schrodinger quadratic entries. Tables 2 and 3 tabulate beta, the number
 * of derivatives the data may be rougher than Gibbs data (alpha = 0),
 * over d in {2,3,4} and quadratic/cubic nonlinearities, for HHH and HHL
 * interactions respectively.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "probscale/equation.hpp"
#include "probscale/rational.hpp"

namespace probscale::tables {

struct Table1Cell {
    std::string formula;              ///< cell text, e.g. "-3/(2(p-1))"
    std::optional<Rational> constant; ///< set when the cell is a plain number
    bool footnote = false;            ///< carries a caveat (wave p=2 low-d anomaly,
                                      ///< Schrodinger p=2 meaning |u|^2)
};

struct Table1Row {
    EquationKind eq;
    std::string degree_label; ///< "all p", "p=2", "p>=3"
    Table1Cell s_pr;
    Table1Cell s_hhl;
    /// Evaluates the row's formulas at concrete (d, p). The constant wave
    /// p=2 cell evaluates to the printed -3/2, not the low-d anomaly.
    Rational eval_s_pr(int d, int p) const;
    Rational eval_s_hhl(int d, int p) const;
};

/// 3 x 6 grid of beta values: rows Heat/Wave/Schrodinger, columns
/// (2D,3D,4D) x (quadratic, cubic).
struct BetaTable {
    static constexpr std::array<const char*, 6> kColumns = {
        "2D Quad.", "2D Cubic", "3D Quad.", "3D Cubic", "4D Quad.", "4D Cubic"};
    static constexpr std::array<const char*, 3> kRows = {"Heat", "Wave", "Schrodinger"};
    std::array<std::array<Rational, 6>, 3> cells;

    /// Spec of the equation behind a given cell. The quadratic Schrodinger
    /// column means |u|^2; quadratic heat/wave mean u^2.
    static EquationSpec cell_spec(int row, int col);
};

struct TableSet {
    std::vector<Table1Row> table1;
    BetaTable table2; ///< HHH interactions: beta = s_G - s_pr
    BetaTable table3; ///< HHL interactions: beta = s_G - s_hhl
};

/// Builds all three tables from the exponent formulas.
TableSet render_tables();

/// Aligned-text rendering for terminal display.
std::string table1_text(const std::vector<Table1Row>& t);
std::string beta_table_text(const BetaTable& t, const std::string& title);

} // namespace probscale::tables
