#include <charconv>
#include <chrono>
#include <ctime>
#include <ostream>
#include <string>

#include "sqom/sweep.hpp"

namespace sqom {

std::string format_double(double v) {
    char buf[64];
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

constexpr std::string_view kAbsent = "NA";

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
    return s;
}

class RowWriter {
public:
    explicit RowWriter(std::ostream& os) : os_(os) {}
    void cell(std::string_view s) {
        if (!first_) os_ << ',';
        first_ = false;
        os_ << s;
    }
    void num(double v) { cell(format_double(v)); }
    void opt(const std::optional<double>& v) {
        if (v) num(*v);
        else cell(kAbsent);
    }
    void absent(int n) {
        for (int k = 0; k < n; ++k) cell(kAbsent);
    }
    void end() {
        os_ << '\n';
        first_ = true;
    }

private:
    std::ostream& os_;
    bool first_ = true;
};

} // namespace

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows,
               bool timestamp) {
    const MeasureSet& m = spec.measures;
    os << "# " << kCsvSchema << '\n';
    if (!spec.name.empty()) os << "# sweep: " << spec.name << '\n';
    if (timestamp) os << "# generated: " << timestamp_utc() << '\n';

    RowWriter w(os);
    for (const SweepAxis& ax : spec.axes) w.cell(ax.name);
    for (auto c : {"direction", "status", "stable", "spectral_abscissa"}) w.cell(c);
    if (m.noise)
        for (auto c : {"n_s", "m_s_re", "m_s_im"}) w.cell(c);
    if (m.enhancement)
        for (auto c : {"pi_1", "pi_2"}) w.cell(c);
    if (m.entanglement)
        for (auto c : {"EN_a_q1", "EN_a_q2", "EN_q1_q2", "I_1", "I_2"}) w.cell(c);
    if (m.contangle)
        for (auto c : {"Etau_a_q1q2", "Etau_q1_aq2", "Etau_q2_aq1", "R_tau_min", "R_tau_raw",
                       "monogamy_violation"})
            w.cell(c);
    if (m.steering) {
        for (int k = 0; k < 3; ++k) {
            const auto [mu, nu] = kBipartitions[k];
            const std::string a(to_string(mu)), b(to_string(nu));
            w.cell("S_" + a + "_to_" + b);
            w.cell("S_" + b + "_to_" + a);
            w.cell("regime_" + a + "_" + b);
        }
    }
    if (m.cm)
        for (int r = 0; r < 6; ++r)
            for (int c = r; c < 6; ++c) w.cell("V" + std::to_string(r + 1) + std::to_string(c + 1));
    w.cell("message");
    w.end();

    for (const SweepRow& row : rows) {
        for (double v : row.axis_values) w.num(v);
        w.cell(to_string(row.direction));
        w.cell(to_string(row.status));
        w.cell(row.stable ? "1" : "0");
        w.opt(row.spectral_abscissa);
        if (m.noise) {
            if (row.derived) {
                w.num(row.derived->n_s);
                w.num(row.derived->m_s.real());
                w.num(row.derived->m_s.imag());
            } else {
                w.absent(3);
            }
        }
        if (m.enhancement) {
            if (row.derived) {
                w.opt(row.derived->pi_factor[0]);
                w.opt(row.derived->pi_factor[1]);
            } else {
                w.absent(2);
            }
        }
        const MeasureReport* mr = row.measures ? &*row.measures : nullptr;
        if (m.entanglement) {
            if (mr)
                for (double e : mr->e_n) w.num(e);
            else
                w.absent(3);
            w.opt(row.asymmetry[0]);
            w.opt(row.asymmetry[1]);
        }
        if (m.contangle) {
            if (mr) {
                for (double e : mr->e_tau_one_vs_two) w.num(e);
                w.num(mr->contangle.r_tau_min);
                w.num(mr->contangle.raw_min);
                w.cell(mr->contangle.monogamy_violation ? "1" : "0");
            } else {
                w.absent(6);
            }
        }
        if (m.steering) {
            for (int k = 0; k < 3; ++k) {
                if (mr) {
                    w.num(mr->steering[k].forward);
                    w.num(mr->steering[k].backward);
                    w.cell(to_string(mr->steering[k].regime));
                } else {
                    w.absent(3);
                }
            }
        }
        if (m.cm) {
            if (row.cm)
                for (int r = 0; r < 6; ++r)
                    for (int c = r; c < 6; ++c) w.num(row.cm->v(r, c));
            else
                w.absent(21);
        }
        w.cell(sanitize(row.message));
        w.end();
    }
}

} // namespace sqom
