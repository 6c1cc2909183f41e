#pragma once

#include "wce/frobenius.hpp"
#include "wce/virasoro.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>

namespace wce {

using nlohmann::json;

// ---------------------------------------------------------------------------
// text forms
// ---------------------------------------------------------------------------

/// Monomial in packed (i,p)-variables: `i,p^e` factors joined by spaces,
/// "1" for the empty monomial.
inline std::string mono_to_text(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : m.f) {
        if (!s.empty()) s += " ";
        s += std::to_string(v >> 16) + "," + std::to_string(v & 0xFFFFu);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline Monomial mono_from_text(const std::string& s) {
    Monomial m;
    if (s == "1" || s.empty()) return m;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        auto comma = tok.find(',');
        auto caret = tok.find('^');
        if (comma == std::string::npos) throw std::invalid_argument("bad monomial token: " + tok);
        unsigned i = static_cast<unsigned>(std::stoul(tok.substr(0, comma)));
        unsigned p = static_cast<unsigned>(
            std::stoul(tok.substr(comma + 1, caret == std::string::npos ? std::string::npos
                                                                        : caret - comma - 1)));
        unsigned e = caret == std::string::npos
                         ? 1
                         : static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
        m.bump((i << 16) | p, e);
    }
    return m;
}

/// CLI goal syntax: `(i,p)^k` factors separated by spaces.
inline Monomial goal_from_text(const std::string& s) {
    Monomial m;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        unsigned i = 0, p = 0, e = 1;
        if (std::sscanf(tok.c_str(), "(%u,%u)^%u", &i, &p, &e) >= 2) {
            m.bump(tvar::var(i, p), e);
        } else {
            throw std::invalid_argument("bad goal factor (expected (i,p)^k): " + tok);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

inline json datum_header_json(const RootDatum& d) {
    return json{{"family", std::string(1, d.family)},
                {"rank", d.rank},
                {"h", d.h},
                {"exponents", d.exponents},
                {"conductor", d.conductor}};
}

inline json generators_to_json(const RootDatum& d, GenStrategy strategy,
                               const std::vector<Poly>& gens) {
    json out = datum_header_json(d);
    out["strategy"] = strategy_name(strategy);
    out["contraction"] = "symmetric-regularized";
    json list = json::array();
    for (const auto& g : gens) {
        json terms = json::array();
        for (const auto& [m, c] : g) terms.push_back({mono_to_text(m), c.to_string()});
        list.push_back(terms);
    }
    out["generators"] = list;
    return out;
}

inline std::vector<Poly> generators_from_json(const json& j) {
    std::vector<Poly> gens;
    for (const auto& terms : j.at("generators")) {
        Poly g;
        for (const auto& t : terms)
            g.emplace(mono_from_text(t.at(0).get<std::string>()),
                      Cyc::from_string(t.at(1).get<std::string>()));
        gens.push_back(std::move(g));
    }
    return gens;
}

inline json operator_to_json(const RootDatum& d, GenStrategy strategy, const TwistedOperator& W) {
    json out = datum_header_json(d);
    out["strategy"] = strategy_name(strategy);
    out["contraction"] = "symmetric-regularized";
    out["i"] = W.gen_index;
    out["m"] = W.mode;
    out["window_cre_num"] = W.window_cre_num;
    out["window_ann_num"] = W.window_ann_num;
    out["c_leading"] = W.c_leading.to_string();
    auto dump_terms = [&](const std::vector<OpTerm>& terms) {
        std::vector<const OpTerm*> order;
        for (const auto& t : terms) order.push_back(&t);
        std::sort(order.begin(), order.end(), [&](const OpTerm* a, const OpTerm* b) {
            long long da = tvar::mono_deg_num(d, a->cre) - tvar::mono_deg_num(d, a->ann);
            long long db = tvar::mono_deg_num(d, b->cre) - tvar::mono_deg_num(d, b->ann);
            if (da != db) return da < db;
            if (!(a->cre == b->cre)) return a->cre < b->cre;
            return a->ann < b->ann;
        });
        json arr = json::array();
        for (const OpTerm* t : order)
            arr.push_back({t->coeff.to_string(), mono_to_text(t->cre), mono_to_text(t->ann)});
        return arr;
    };
    out["qterms"] = dump_terms(W.qterms);
    out["tterms"] = dump_terms(W.tterms);
    return out;
}

inline TwistedOperator operator_from_json(const json& j) {
    TwistedOperator W;
    W.gen_index = j.at("i").get<unsigned>();
    W.mode = j.at("m").get<unsigned>();
    W.window_cre_num = j.at("window_cre_num").get<long long>();
    W.window_ann_num = j.at("window_ann_num").get<long long>();
    W.c_leading = Cyc::from_string(j.at("c_leading").get<std::string>());
    auto read_terms = [&](const json& arr, std::vector<OpTerm>& into) {
        for (const auto& t : arr)
            into.push_back(OpTerm{Cyc::from_string(t.at(0).get<std::string>()),
                                  mono_from_text(t.at(1).get<std::string>()),
                                  mono_from_text(t.at(2).get<std::string>())});
    };
    read_terms(j.at("qterms"), W.qterms);
    read_terms(j.at("tterms"), W.tterms);
    W.build_index();
    return W;
}

/// TauSeries / LogSeries JSON: deterministic (degree, monomial) entry order;
/// genus tags present for log series.
inline json series_to_json(const RootDatum& d, const TauSeries& s,
                           const std::map<Monomial, long long>* genus = nullptr) {
    json out = datum_header_json(d);
    out["truncation_num"] = s.truncation_num;
    std::vector<const Monomial*> order;
    for (const auto& [m, c] : s.coeffs) order.push_back(&m);
    std::sort(order.begin(), order.end(), [&](const Monomial* a, const Monomial* b) {
        long long da = tvar::mono_deg_num(d, *a), db = tvar::mono_deg_num(d, *b);
        if (da != db) return da < db;
        return *a < *b;
    });
    json entries = json::array();
    for (const Monomial* m : order) {
        json factors = json::array();
        for (const auto& [v, e] : m->f)
            factors.push_back({tvar::idx(v), tvar::lvl(v), e});
        json entry{{"monomial", factors}, {"value", s.coeffs.at(*m).to_string()}};
        if (genus) {
            auto it = genus->find(*m);
            if (it != genus->end()) entry["genus"] = it->second;
        }
        entries.push_back(entry);
    }
    out["entries"] = entries;
    return out;
}

inline TauSeries series_from_json(const json& j) {
    TauSeries s;
    s.family = j.at("family").get<std::string>()[0];
    s.rank = j.at("rank").get<unsigned>();
    s.h = j.at("h").get<unsigned>();
    s.conductor = j.at("conductor").get<unsigned>();
    s.truncation_num = j.at("truncation_num").get<long long>();
    for (const auto& e : j.at("entries")) {
        Monomial m;
        for (const auto& f : e.at("monomial"))
            m.bump(tvar::var(f.at(0).get<unsigned>(), f.at(1).get<unsigned>()),
                   f.at(2).get<unsigned>());
        s.coeffs.emplace(std::move(m), Cyc::from_string(e.at("value").get<std::string>()));
    }
    return s;
}

// ---------------------------------------------------------------------------
// text cache bodies
// ---------------------------------------------------------------------------

inline std::string datum_header_text(const RootDatum& d, GenStrategy strategy) {
    std::ostringstream os;
    os << "datum " << d.family << d.rank << " conductor " << d.conductor << " strategy "
       << strategy_name(strategy) << " contraction symmetric-regularized";
    return os.str();
}

inline std::string generators_to_text(const RootDatum& d, GenStrategy strategy,
                                      const std::vector<Poly>& gens) {
    std::ostringstream os;
    os << datum_header_text(d, strategy) << "\n";
    for (unsigned i = 1; i <= gens.size(); ++i) {
        os << "generator " << i << " " << gens[i - 1].size() << "\n";
        for (const auto& [m, c] : gens[i - 1]) os << mono_to_text(m) << ";" << c.to_string() << "\n";
    }
    return os.str();
}

inline std::optional<std::vector<Poly>> generators_from_text(const RootDatum& d,
                                                             GenStrategy strategy,
                                                             const std::string& body) {
    std::istringstream is(body);
    std::string line;
    if (!std::getline(is, line) || line != datum_header_text(d, strategy)) return std::nullopt;
    std::vector<Poly> gens;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        unsigned idx = 0;
        std::size_t nterms = 0;
        ls >> kw >> idx >> nterms;
        if (kw != "generator" || idx != gens.size() + 1) return std::nullopt;
        Poly g;
        for (std::size_t t = 0; t < nterms; ++t) {
            if (!std::getline(is, line)) return std::nullopt;
            auto semi = line.find(';');
            if (semi == std::string::npos) return std::nullopt;
            g.emplace(mono_from_text(line.substr(0, semi)), Cyc::from_string(line.substr(semi + 1)));
        }
        gens.push_back(std::move(g));
    }
    if (gens.size() != d.rank) return std::nullopt;
    return gens;
}

/// Operator cache: header (datum, strategy, i, m, window), then one line per
/// OperatorTerm `coeff;creations;annihilations`, ordered by (term degree,
/// creations, annihilations), so files are byte-reproducible.
inline std::string operator_to_text(const RootDatum& d, GenStrategy strategy,
                                    const TwistedOperator& W) {
    std::ostringstream os;
    os << datum_header_text(d, strategy) << " i " << W.gen_index << " m " << W.mode << " window "
       << W.window_cre_num << " " << W.window_ann_num << "\n";
    os << "c_leading " << W.c_leading.to_string() << "\n";
    auto dump = [&](const char* tag, const std::vector<OpTerm>& terms) {
        std::vector<const OpTerm*> order;
        for (const auto& t : terms) order.push_back(&t);
        std::sort(order.begin(), order.end(), [&](const OpTerm* a, const OpTerm* b) {
            long long da = tvar::mono_deg_num(d, a->cre) - tvar::mono_deg_num(d, a->ann);
            long long db = tvar::mono_deg_num(d, b->cre) - tvar::mono_deg_num(d, b->ann);
            if (da != db) return da < db;
            if (!(a->cre == b->cre)) return a->cre < b->cre;
            return a->ann < b->ann;
        });
        for (const OpTerm* t : order)
            os << tag << " " << t->coeff.to_string() << ";" << mono_to_text(t->cre) << ";"
               << mono_to_text(t->ann) << "\n";
    };
    dump("qterm", W.qterms);
    dump("tterm", W.tterms);
    return os.str();
}

inline std::optional<TwistedOperator> operator_from_text(const RootDatum& d, GenStrategy strategy,
                                                         unsigned i, unsigned m,
                                                         const std::string& body) {
    std::istringstream is(body);
    std::string line;
    if (!std::getline(is, line)) return std::nullopt;
    TwistedOperator W;
    W.gen_index = i;
    W.mode = m;
    {
        std::ostringstream want;
        want << datum_header_text(d, strategy) << " i " << i << " m " << m << " window ";
        if (line.rfind(want.str(), 0) != 0) return std::nullopt;
        std::istringstream rest(line.substr(want.str().size()));
        if (!(rest >> W.window_cre_num >> W.window_ann_num)) return std::nullopt;
    }
    if (!std::getline(is, line) || line.rfind("c_leading ", 0) != 0) return std::nullopt;
    W.c_leading = Cyc::from_string(line.substr(10));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto sp = line.find(' ');
        if (sp == std::string::npos) return std::nullopt;
        std::string tag = line.substr(0, sp);
        auto s1 = line.find(';', sp);
        auto s2 = line.find(';', s1 + 1);
        if (s1 == std::string::npos || s2 == std::string::npos) return std::nullopt;
        OpTerm t{Cyc::from_string(line.substr(sp + 1, s1 - sp - 1)),
                 mono_from_text(line.substr(s1 + 1, s2 - s1 - 1)),
                 mono_from_text(line.substr(s2 + 1))};
        if (tag == "qterm")
            W.qterms.push_back(std::move(t));
        else if (tag == "tterm")
            W.tterms.push_back(std::move(t));
        else
            return std::nullopt;
    }
    W.build_index();
    return W;
}

// ---------------------------------------------------------------------------
// checksummed cache files
// ---------------------------------------------------------------------------

constexpr const char* kCacheMagic = "wce-cache v1";

/// Atomic write: temp file in the same directory, then rename.
inline void cache_write(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::create_directories(path.parent_path());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(body)));
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        os << kCacheMagic << " " << buf << "\n" << body;
        if (!os) throw std::runtime_error("cache write failed: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Returns the payload, or nullopt when missing or corrupt (checksum or
/// schema mismatch); corrupt entries are treated as cache misses.
inline std::optional<std::string> cache_read(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::string header;
    if (!std::getline(is, header)) return std::nullopt;
    std::string magic = std::string(kCacheMagic) + " ";
    if (header.rfind(magic, 0) != 0 || header.size() != magic.size() + 16) return std::nullopt;
    std::string body((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(body)));
    if (header.substr(magic.size()) != buf) return std::nullopt;
    return body;
}

}  // namespace wce
