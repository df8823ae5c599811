#include "ogus/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <regex>
#include <sstream>

#include "ogus/errors.hpp"

namespace ogus::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line)
{
    const auto h = line.find('#');
    return trim(h == std::string::npos ? line : line.substr(0, h));
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what)
{
    throw Error(ErrorKind::ConfigParse, "line " + std::to_string(line) + ": " + what);
}

std::optional<mpq_class> parse_rational(const std::string& s)
{
    static const std::regex re(R"(([+-]?\d+)(?:\s*/\s*(\d+))?)");
    std::smatch mt;
    if (!std::regex_match(s, mt, re))
        return std::nullopt;
    const mpz_class num(mt[1].str());
    const mpz_class den(mt[2].matched ? mt[2].str() : std::string("1"));
    if (den == 0)
        return std::nullopt;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::optional<long> parse_long(const std::string& s)
{
    static const std::regex re(R"([+-]?\d{1,17})");
    if (!std::regex_match(s, re))
        return std::nullopt;
    return std::stol(s);
}

std::string field_name(const QuadField& k)
{
    return k.is_rational() ? "Q" : "Q(sqrt " + std::to_string(k.d()) + ")";
}

std::string place_list(const std::vector<Place>& places)
{
    std::string s;
    for (const auto& v : places)
        s += (s.empty() ? "" : ", ") + to_string(v);
    return s.empty() ? "none" : s;
}

std::string qmatrix_string(const QMatrix& a)
{
    std::string s = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += (j ? ", " : "") + to_string(a(i, j));
    }
    return s + "]";
}

std::string format_modulus(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

QuadField resolve_field(const MotiveConfig& c, const Options& o)
{
    const long d = c.field_d.value_or(o.field_d);
    if (c.field_d && o.field_d != 1 && *c.field_d != o.field_d)
        throw Error(ErrorKind::InvalidArgument, "field_d in config disagrees with --field-d");
    return QuadField(d);
}

std::vector<Place> resolve_places(const std::vector<const KummerMotive*>& motives, const QuadField& k,
                                  const PlacePolicy& policy)
{
    auto good_for_all = [&](long p) {
        for (const auto* m : motives)
            if (!is_good_place(*m, k, p))
                return false;
        return true;
    };
    if (policy.automatic) {
        std::vector<Place> good;
        for (const auto& v : good_places(*motives.front(), k, policy.bound))
            if (good_for_all(v.p))
                good.push_back(v);
        return select_places(good, k);
    }
    std::vector<Place> out;
    for (long p : policy.primes) {
        if (!good_for_all(p))
            throw Error(ErrorKind::NotAGoodPlace, "place " + std::to_string(p) + " is not good for the input");
        out.push_back(classify_place(k, p));
    }
    return out;
}

std::string header(const std::string& command, const std::vector<const Input*>& inputs)
{
    std::ostringstream os;
    os << "command: " << command << "\n";
    for (const auto* in : inputs)
        os << "input: " << in->name << " digest " << digest(in->text) << "\n";
    return os.str();
}

template <class F>
Report guarded(std::string head, F&& body)
{
    Report r;
    std::ostringstream os;
    os << head;
    try {
        r.status = body(os);
    } catch (const Error& e) {
        os << "error: " << e.what() << "\n";
        os << "status: ERROR(" << to_string(e.kind()) << ")\n";
        r.status = Status::Error;
        r.text = os.str();
        return r;
    }
    os << "status: " << (r.status == Status::Ok ? "OK" : "VIOLATION") << "\n";
    r.text = os.str();
    return r;
}

long smallest_nonresidue(long p)
{
    for (long d = 2; d < p; ++d)
        if (mpz_legendre(mpz_class(d).get_mpz_t(), mpz_class(p).get_mpz_t()) == -1)
            return d;
    throw Error(ErrorKind::InvalidArgument, "no quadratic non-residue");
}

}  // namespace

std::string digest(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

MotiveConfig parse_motive_config(const std::string& text)
{
    static const std::regex entry(R"(u\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\])");
    std::optional<long> d, r, s;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<mpq_class, std::size_t>> u;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string body = strip_comment(raw);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            parse_error(line, "expected `key = value`");
        const std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
        std::smatch mt;
        if (key == "field_d" || key == "r" || key == "s") {
            const auto v = parse_long(value);
            if (!v)
                parse_error(line, "expected an integer for " + key);
            auto& slot = key == "field_d" ? d : key == "r" ? r : s;
            if (slot)
                parse_error(line, "duplicate key " + key);
            if (key != "field_d" && *v < 0)
                parse_error(line, key + " must be nonnegative");
            slot = *v;
        } else if (std::regex_match(key, mt, entry)) {
            const auto q = parse_rational(value);
            if (!q)
                parse_error(line, "expected a rational num/den");
            const std::pair<std::size_t, std::size_t> ij{std::stoul(mt[1].str()), std::stoul(mt[2].str())};
            if (u.count(ij))
                parse_error(line, "duplicate entry " + key);
            u[ij] = {*q, line};
        } else {
            parse_error(line, "unknown key `" + key + "`");
        }
    }
    if (!r)
        parse_error(line + 1, "missing key r");
    if (!s)
        parse_error(line + 1, "missing key s");
    if (d && !is_squarefree(*d))
        throw Error(ErrorKind::ConfigParse, "field_d must be squarefree");
    const auto rs = static_cast<std::size_t>(*r), ss = static_cast<std::size_t>(*s);
    std::vector<std::vector<mpq_class>> entries(ss, std::vector<mpq_class>(rs));
    for (const auto& [ij, v] : u) {
        if (ij.first >= ss || ij.second >= rs)
            parse_error(v.second, "entry index outside s x r");
        if (sgn(v.first) <= 0)
            throw Error(ErrorKind::NonPositiveEntry,
                        "line " + std::to_string(v.second) + ": entry " + to_string(v.first) + " is not positive");
        entries[ij.first][ij.second] = v.first;
    }
    for (std::size_t i = 0; i < ss; ++i)
        for (std::size_t j = 0; j < rs; ++j)
            if (!u.count({i, j}))
                parse_error(line + 1, "missing entry u[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    return {d, KummerMotive(ss, rs, entries)};
}

QMatrix parse_matrix(const std::string& text)
{
    std::vector<QVector> rows;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string body = strip_comment(raw);
        if (body.empty())
            continue;
        std::istringstream ls(body);
        QVector row;
        std::string tok;
        while (ls >> tok) {
            const auto q = parse_rational(tok);
            if (!q)
                parse_error(line, "bad matrix entry `" + tok + "`");
            row.push_back(*q);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            parse_error(line, "row length differs from the first row");
        rows.push_back(row);
    }
    if (rows.empty() || rows.size() != rows.front().size())
        throw Error(ErrorKind::ConfigParse, "matrix must be square and nonempty");
    return QMatrix::from_rows(rows, rows.size());
}

QPoly parse_charpoly(const std::string& text)
{
    std::vector<mpq_class> c;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const auto q = parse_rational(trim(tok));
        if (!q)
            throw Error(ErrorKind::ConfigParse, "bad charpoly coefficient `" + trim(tok) + "`");
        c.push_back(*q);
    }
    std::reverse(c.begin(), c.end());
    return QPoly(c);
}

PlacePolicy parse_place_policy(const std::string& text)
{
    PlacePolicy out;
    if (text.rfind("auto:", 0) == 0) {
        const auto b = parse_long(text.substr(5));
        if (!b || *b < 3)
            throw Error(ErrorKind::ConfigParse, "--places auto:<bound> needs a bound >= 3");
        out.bound = *b;
        return out;
    }
    if (text.rfind("list:", 0) == 0) {
        out.automatic = false;
        std::istringstream in(text.substr(5));
        std::string tok;
        while (std::getline(in, tok, ',')) {
            const auto p = parse_long(trim(tok));
            if (!p)
                throw Error(ErrorKind::ConfigParse, "bad prime `" + tok + "` in --places");
            out.primes.push_back(*p);
        }
        if (out.primes.empty())
            throw Error(ErrorKind::ConfigParse, "--places list: is empty");
        return out;
    }
    throw Error(ErrorKind::ConfigParse, "--places must be auto:<bound> or list:p1,p2,...");
}

Report run_realize(const Input& config, const Options& options)
{
    return guarded(header("realize", {&config}), [&](std::ostream& os) {
        const MotiveConfig c = parse_motive_config(config.text);
        const QuadField k = resolve_field(c, options);
        const KummerMotive& m = c.motive;
        const auto places = resolve_places({&m}, k, options.places);
        const OgObject x = t_Og(m, k, places, options.precision);
        os << "field: " << field_name(k) << "\n";
        os << "motive: s = " << m.s() << ", r = " << m.r() << "\n";
        os << "places: " << place_list(places) << "\n";
        os << "precision: " << options.precision << "\n";
        os << "weights:";
        std::size_t prev = 0;
        for (const auto& st : x.steps) {
            os << " gr_" << st.weight << " dim " << st.dim - prev << ";";
            prev = st.dim;
        }
        os << "\n";
        const ObjectReport rep = check_object(x);
        for (const auto& lf : x.locals) {
            const FracMatrix& a = lf.frobenius.matrix();
            os << "place " << to_string(lf.local.place()) << "\n";
            os << "  F = p^-" << a.denom_exp << " * A * sigma, A entries (base-p digits, low first):\n";
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j)
                    os << "    A[" << i << "][" << j << "] = " << a.numer(i, j).digits() << "\n";
            const DeltaData d = delta_section(m, lf.local);
            for (std::size_t i = 0; i < m.s(); ++i)
                for (std::size_t j = 0; j < m.r(); ++j)
                    os << "  lambda[" << i << "][" << j << "] = " << d.lambda[i][j].value.with_precision(d.lambda[i][j].guaranteed_precision).digits()
                       << " (guaranteed " << d.lambda[i][j].guaranteed_precision << ")\n";
            for (const auto& pl : rep.purity)
                if (pl.p == lf.local.p())
                    os << "  purity: gr_" << pl.weight << " dim " << pl.dim << " " << (pl.pure ? "pure" : "NOT pure")
                       << "\n";
        }
        for (const auto& v : rep.violations)
            os << "violation: " << v.where << ": " << v.what << "\n";
        return rep.ok ? Status::Ok : Status::Violation;
    });
}

Report run_hom(const Input& left, const Input& right, const Options& options)
{
    return guarded(header("hom", {&left, &right}), [&](std::ostream& os) {
        const MotiveConfig cl = parse_motive_config(left.text), cr = parse_motive_config(right.text);
        const QuadField k = resolve_field(cl, options);
        if (!(resolve_field(cr, options) == k))
            throw Error(ErrorKind::InvalidArgument, "the two configs name different fields");
        const KummerMotive &m = cl.motive, &n = cr.motive;
        const auto places = resolve_places({&m, &n}, k, options.places);
        os << "field: " << field_name(k) << "\n";
        os << "places: " << place_list(places) << "\n";
        os << "precision: " << options.precision << "\n";
        os << "bound: " << options.bound.get_str() << "\n";
        const FullnessReport rep = check_fullness(m, n, k, places, options.precision, options.bound);
        os << "exact_dimension: " << rep.exact_basis.size() << "\n";
        for (std::size_t i = 0; i < rep.exact_basis.size(); ++i)
            os << "  exact[" << i << "]: E = " << qmatrix_string(rep.exact_basis[i].e)
               << ", D = " << qmatrix_string(rep.exact_basis[i].d) << " -> " << rep.realized[i].to_string() << "\n";
        os << "analytic_dimension: " << rep.analytic.analytic_dimension << "\n";
        for (std::size_t i = 0; i < rep.analytic.basis.size(); ++i)
            os << "  basis[" << i << "]: " << rep.analytic.basis[i].to_string() << "\n";
        for (const auto& ps : rep.analytic.per_place)
            os << "  place " << ps.p << ": digits " << ps.precision << ", local candidates " << ps.local_dimension
               << ", p-adic kernel " << ps.padic_kernel_dimension << "\n";
        os << "faithful: " << (rep.faithful ? "true" : "false") << "\n";
        os << "spaces_equal: " << (rep.spaces_equal ? "true" : "false") << "\n";
        os << "strict: " << (rep.strict ? "true" : "false") << "\n";
        if (m.s() == n.s() && m.r() == n.r()) {
            const OgObject xm = t_Og(m, k, places, options.precision), xn = t_Og(n, k, places, options.precision);
            std::string note = "identity is a morphism";
            for (std::size_t i = 0; i < xm.locals.size(); ++i) {
                const auto& lm = xm.locals[i];
                const FracMatrix id = FracMatrix::identity(lm.local.context(), xm.dim);
                const CommuteResult c = commutes(id, lm.frobenius, xn.locals[i].frobenius, kDefaultGuard);
                if (!c.ok) {
                    note = "identity not a morphism; witness place " + std::to_string(lm.local.p()) + " entry (" +
                           std::to_string(c.witness->row) + "," + std::to_string(c.witness->col) +
                           ") valuation " + std::to_string(c.witness->valuation);
                    break;
                }
            }
            os << "note: " << note << "\n";
        }
        if (rep.violation())
            os << "FULLNESS_VIOLATION\n";
        return rep.violation() ? Status::Violation : Status::Ok;
    });
}

Report run_decompose(const Input& matrix, long p, int n, const std::string& charpoly, int precision)
{
    Input cp{"charpoly", charpoly};
    return guarded(header("decompose", {&matrix, &cp}), [&](std::ostream& os) {
        const QMatrix a = parse_matrix(matrix.text);
        const QPoly f = parse_charpoly(charpoly);
        if (n != 1 && n != 2)
            throw Error(ErrorKind::InvalidArgument, "--n must be 1 or 2");
        const ContextPtr ctx = PadicContext::make(p, n, precision, n == 2 ? smallest_nonresidue(p) : 0);
        std::vector<PadicFraction> entries;
        int denom = 0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                entries.push_back(embed_fraction(a(i, j), ctx));
                if (!entries.back().is_zero())
                    denom = std::max(denom, -entries.back().valuation());
            }
        PadicMatrix numer(ctx, a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                numer(i, j) = entries[i * a.cols() + j].shifted(denom).to_integral();
        os << "p: " << p << "\nn: " << n << "\nprecision: " << precision << "\n";
        os << "charpoly: " << f.to_string() << "\n";
        const WeightDecomposition w = decompose(FracMatrix{numer, denom}, f);
        for (const auto& pr : w.factors) {
            os << "factor " << pr.factor.to_string() << ": "
               << (pr.weight ? "weight " + std::to_string(*pr.weight) : std::string("not pure")) << "; moduli";
            for (double x : pr.numeric_moduli)
                os << " " << format_modulus(x);
            os << "\n";
        }
        for (const auto& s : w.summands) {
            os << "summand weight " << s.weight << " dim " << s.basis.cols() << "\n";
            for (std::size_t j = 0; j < s.basis.cols(); ++j)
                for (std::size_t i = 0; i < s.basis.rows(); ++i)
                    os << "  v" << j << "[" << i << "] = " << s.basis(i, j).digits() << "\n";
        }
        os << "filtration:";
        for (const auto& [i, d] : w.filtration)
            os << " W_" << i << " = " << d << ";";
        os << "\n";
        return Status::Ok;
    });
}

Report run_check(const Input& config, const Options& options, int twist)
{
    return guarded(header("check", {&config}), [&](std::ostream& os) {
        const MotiveConfig c = parse_motive_config(config.text);
        const QuadField k = resolve_field(c, options);
        const auto places = resolve_places({&c.motive}, k, options.places);
        const OgObject x = twist_object(t_Og(c.motive, k, places, options.precision), twist);
        os << "field: " << field_name(k) << "\n";
        os << "places: " << place_list(places) << "\n";
        os << "precision: " << options.precision << "\n";
        os << "twist: " << twist << "\n";
        const ObjectReport rep = check_object(x);
        os << "valid: " << (rep.ok ? "true" : "false") << "\n";
        for (const auto& v : rep.violations)
            os << "violation: " << v.where << ": " << v.what << "\n";
        if (!rep.ok)
            return Status::Violation;
        auto leff = [&](const OgObject& y, const std::string& label) {
            const LEffectivity le = is_l_effective(y);
            os << label << ": " << (le.ok ? "true" : "false");
            if (le.witness)
                os << " (place " << le.witness->p << " entry (" << le.witness->row << "," << le.witness->col
                   << ") valuation " << le.witness->valuation << ")";
            os << "\n";
        };
        leff(x, "l-effective X");
        leff(twist_object(x, -1), "l-effective X(-1)");
        for (const auto& st : x.steps) {
            const OgObject g = gr(x, st.weight);
            if (g.dim > 0)
                os << "e-effective gr_" << st.weight << ": " << (is_e_effective(g) ? "true" : "false") << "\n";
        }
        const LevelReport lv = is_level_le_1(x);
        os << "level <= 1: " << (lv.holds ? "true" : "false") << "\n";
        for (const auto& cl : lv.clauses)
            os << "  " << cl.name << ": " << (cl.holds ? "true" : "false") << "\n";
        return Status::Ok;
    });
}

}  // namespace ogus::cli
