#include "probscale/tables.hpp"

#include <sstream>
#include <iomanip>

#include "probscale/exponents.hpp"

namespace probscale::tables {

Rational Table1Row::eval_s_pr(int d, int p) const {
    (void)d;
    switch (eq) {
        case EquationKind::Heat: return Rational(-2, p - 1);
        case EquationKind::Wave:
            if (degree_label == "p=2") return Rational(-3, 2); // printed generic value
            return Rational(-3, 2 * (p - 1));
        case EquationKind::Schrodinger:
            if (degree_label == "p=2") return Rational(-1);
            return Rational(-1, p - 1);
    }
    throw std::logic_error("unreachable");
}

Rational Table1Row::eval_s_hhl(int d, int p) const {
    switch (eq) {
        case EquationKind::Heat: return Rational(-(d + 2), 2 * p);
        case EquationKind::Wave:
            if (degree_label == "p=2") return Rational(-d, 4);
            return Rational(-(d + 1), 2 * p);
        case EquationKind::Schrodinger:
            if (degree_label == "p=2") return Rational(-(d + 1), 4);
            return Rational(-(d + 2), 2 * p);
    }
    throw std::logic_error("unreachable");
}

EquationSpec BetaTable::cell_spec(int row, int col) {
    const int d = 2 + col / 2;
    const bool quad = col % 2 == 0;
    const EquationKind eq =
        row == 0 ? EquationKind::Heat : (row == 1 ? EquationKind::Wave : EquationKind::Schrodinger);
    NonlinearitySpec nl;
    if (quad)
        nl = eq == EquationKind::Schrodinger ? NonlinearitySpec::modulus_square()
                                             : NonlinearitySpec::power(2);
    else
        nl = NonlinearitySpec::power(3);
    return EquationSpec(eq, d, nl);
}

TableSet render_tables() {
    TableSet out;

    out.table1 = {
        {EquationKind::Heat, "all p",
         {"-2/(p-1)", std::nullopt, false},
         {"-(d+2)/(2p)", std::nullopt, false}},
        {EquationKind::Wave, "p=2",
         {"-3/2", Rational(-3, 2), true}, // actual threshold is higher for d in {1,2}
         {"-d/4", std::nullopt, false}},
        {EquationKind::Wave, "p>=3",
         {"-3/(2(p-1))", std::nullopt, false},
         {"-(d+1)/(2p)", std::nullopt, false}},
        {EquationKind::Schrodinger, "p=2",
         {"-1", Rational(-1), true}, // p=2 row means |u|^2; u^2 follows -(d+2)/4
         {"-(d+1)/4", std::nullopt, false}},
        {EquationKind::Schrodinger, "p>=3",
         {"-1/(p-1)", std::nullopt, false},
         {"-(d+2)/(2p)", std::nullopt, false}},
    };

    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 6; ++col) {
            const EquationSpec spec = BetaTable::cell_spec(row, col);
            out.table2.cells[row][col] = exponents::beta_hhh(spec);
            out.table3.cells[row][col] = exponents::beta_hhl(spec);
        }
    }
    return out;
}

namespace {

std::string pad(const std::string& s, std::size_t w) {
    return s + std::string(s.size() < w ? w - s.size() : 0, ' ');
}

} // namespace

std::string table1_text(const std::vector<Table1Row>& t) {
    std::ostringstream os;
    os << pad("", 13) << pad("N_p(u)", 8) << pad("s_pr", 14) << "s_hhl\n";
    for (const auto& row : t) {
        os << pad(name(row.eq), 13) << pad(row.degree_label, 8)
           << pad(row.s_pr.formula + (row.s_pr.footnote ? "*" : ""), 14)
           << row.s_hhl.formula + (row.s_hhl.footnote ? "*" : "") << '\n';
    }
    os << "(* see notes: wave p=2 threshold is higher for d in {1,2}; "
          "Schrodinger p=2 row means |u|^2)\n";
    return os.str();
}

std::string beta_table_text(const BetaTable& t, const std::string& title) {
    std::ostringstream os;
    os << title << '\n' << pad("", 13);
    for (const char* c : BetaTable::kColumns) os << pad(c, 10);
    os << '\n';
    for (int row = 0; row < 3; ++row) {
        os << pad(BetaTable::kRows[static_cast<std::size_t>(row)], 13);
        for (int col = 0; col < 6; ++col) os << pad(t.cells[row][col].str(), 10);
        os << '\n';
    }
    return os.str();
}

} // namespace probscale::tables
