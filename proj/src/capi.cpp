#include "etframe/etframe.h"

#include <cmath>
#include <cstring>
#include <string>

#include "conference.hpp"
#include "error.hpp"
#include "frame.hpp"
#include "gram.hpp"
#include "layout.hpp"
#include "partition.hpp"

struct etf_conference {
    etf::ConferenceMatrix impl;
};
struct etf_gram {
    etf::GramMatrix impl;
};
struct etf_frame {
    etf::Frame impl;
};
struct etf_partition {
    etf::Partition impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

etf_status status_of(const etf::Error& e) {
    switch (e.code()) {
        case etf::Errc::invalid_argument: return ETF_ERR_INVALID_ARGUMENT;
        case etf::Errc::not_hermitian: return ETF_ERR_NOT_HERMITIAN;
        case etf::Errc::no_convergence: return ETF_ERR_NO_CONVERGENCE;
        case etf::Errc::spectrum_mismatch: return ETF_ERR_SPECTRUM;
        case etf::Errc::unsupported: return ETF_ERR_UNSUPPORTED;
        case etf::Errc::internal: return ETF_ERR_INTERNAL;
    }
    return ETF_ERR_INTERNAL;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
etf_status guarded(Fn&& fn) {
    try {
        fn();
        return ETF_OK;
    } catch (const etf::Error& e) {
        set_error(e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        set_error(e.what());
        return ETF_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return ETF_ERR_INTERNAL;
    }
}

etf_status invalid(const char* msg) {
    set_error(msg);
    return ETF_ERR_INVALID_ARGUMENT;
}

int route_code(etf::NormRoute route) {
    switch (route) {
        case etf::NormRoute::gram_eig: return ETF_ROUTE_GRAM;
        case etf::NormRoute::outer_eig: return ETF_ROUTE_OUTER;
        case etf::NormRoute::closed_form: return ETF_ROUTE_CLOSED_FORM;
    }
    return ETF_ROUTE_GRAM;
}

std::vector<int> copy_subset(const int* subset, size_t count) {
    if (subset == nullptr || count == 0)
        throw etf::Error(etf::Errc::invalid_argument, "subset must be nonempty");
    return {subset, subset + count};
}

} // namespace

extern "C" {

const char* etf_status_string(etf_status status) {
    switch (status) {
        case ETF_OK: return "ok";
        case ETF_ERR_INVALID_ARGUMENT: return "invalid argument";
        case ETF_ERR_NOT_HERMITIAN: return "matrix not Hermitian";
        case ETF_ERR_NO_CONVERGENCE: return "eigensolver did not converge";
        case ETF_ERR_SPECTRUM: return "spectrum does not match the required pattern";
        case ETF_ERR_UNSUPPORTED: return "unsupported operation";
        case ETF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* etf_last_error(void) { return g_last_error.c_str(); }

/* ---- conference ------------------------------------------------------ */

etf_status etf_conference_build(int k, etf_conference** out) {
    if (out == nullptr) return invalid("null output handle");
    return guarded([&] { *out = new etf_conference{etf::ConferenceMatrix::recursive(k)}; });
}

etf_status etf_conference_build_paley(int q, etf_conference** out) {
    if (out == nullptr) return invalid("null output handle");
    return guarded([&] { *out = new etf_conference{etf::ConferenceMatrix::paley(q)}; });
}

void etf_conference_free(etf_conference* c) { delete c; }

int etf_conference_order(const etf_conference* c) { return c ? c->impl.order() : 0; }

int etf_conference_depth(const etf_conference* c) { return c ? c->impl.depth() : 0; }

int etf_conference_is_symmetric(const etf_conference* c) {
    return c != nullptr && c->impl.symmetric() ? 1 : 0;
}

etf_status etf_conference_entries(const etf_conference* c, int8_t* buf, size_t len) {
    if (c == nullptr || buf == nullptr) return invalid("null argument");
    const size_t need = static_cast<size_t>(c->impl.order()) * c->impl.order();
    if (len != need) return invalid("entry buffer length must be order*order");
    std::memcpy(buf, c->impl.entries().data(), need);
    return ETF_OK;
}

etf_status etf_conference_spectrum(const etf_conference* c, double* magnitude,
                                   int* multiplicity) {
    if (c == nullptr || magnitude == nullptr || multiplicity == nullptr)
        return invalid("null argument");
    const auto s = c->impl.spectrum();
    *magnitude = s.magnitude;
    *multiplicity = s.multiplicity;
    return ETF_OK;
}

/* ---- gram ------------------------------------------------------------ */

etf_status etf_gram_build(const etf_conference* c, double alpha, etf_gram** out) {
    if (c == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = new etf_gram{etf::GramMatrix::build(c->impl, alpha)}; });
}

void etf_gram_free(etf_gram* g) { delete g; }

double etf_gram_mss_alpha(int order) {
    if (order < 2) return std::nan("");
    return etf::GramMatrix::mss_alpha(order);
}

int etf_gram_order(const etf_gram* g) { return g ? g->impl.order() : 0; }

double etf_gram_alpha(const etf_gram* g) { return g ? g->impl.alpha() : 0.0; }

int etf_gram_depth(const etf_gram* g) { return g ? g->impl.depth() : 0; }

etf_status etf_gram_entries(const etf_gram* g, double* re, double* im, size_t len) {
    if (g == nullptr || re == nullptr || im == nullptr) return invalid("null argument");
    const int n = g->impl.order();
    if (len != static_cast<size_t>(n) * n)
        return invalid("entry buffer length must be order*order");
    const auto& m = g->impl.matrix();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto z = m(i, j);
            re[static_cast<size_t>(i) * n + j] = z.real();
            im[static_cast<size_t>(i) * n + j] = z.imag();
        }
    }
    return ETF_OK;
}

etf_status etf_gram_block_indices(const etf_gram* g, int d, int q, int* buf, size_t len) {
    if (g == nullptr || buf == nullptr) return invalid("null argument");
    return guarded([&] {
        if (!g->impl.recursive())
            throw etf::Error(etf::Errc::invalid_argument,
                             "diagonal blocks require the recursive construction");
        auto s = etf::block_index_set({d, q}, g->impl.depth());
        if (len != s.size())
            throw etf::Error(etf::Errc::invalid_argument,
                             "index buffer length must be order >> d");
        std::memcpy(buf, s.data(), s.size() * sizeof(int));
    });
}

etf_status etf_gram_block_norm(const etf_gram* g, int d, int q, double* out) {
    if (g == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = etf::block_norm(g->impl, {d, q}); });
}

/* ---- frame ------------------------------------------------------------ */

etf_status etf_frame_build(const etf_gram* g, etf_frame** out) {
    if (g == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = new etf_frame{etf::build_frame(g->impl)}; });
}

etf_status etf_frame_create(int n, int m, int real_field, const double* re,
                            const double* im, etf_frame** out) {
    if (re == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] {
        if (n < 1 || m < 1)
            throw etf::Error(etf::Errc::invalid_argument, "frame dimensions must be positive");
        etf::ComplexMatrix synth(m, n);
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < m; ++t) {
                const size_t at = static_cast<size_t>(j) * m + t;
                synth(t, j) = {re[at], im != nullptr ? im[at] : 0.0};
            }
        *out = new etf_frame{etf::Frame(
            n, m, real_field ? etf::FieldTag::real : etf::FieldTag::complex, std::move(synth))};
    });
}

void etf_frame_free(etf_frame* f) { delete f; }

int etf_frame_size(const etf_frame* f) { return f ? f->impl.size() : 0; }

int etf_frame_dimension(const etf_frame* f) { return f ? f->impl.dimension() : 0; }

int etf_frame_is_real(const etf_frame* f) {
    return f != nullptr && f->impl.field() == etf::FieldTag::real ? 1 : 0;
}

etf_status etf_frame_vectors(const etf_frame* f, double* re, double* im, size_t len) {
    if (f == nullptr || re == nullptr) return invalid("null argument");
    const int n = f->impl.size();
    const int m = f->impl.dimension();
    if (len != static_cast<size_t>(n) * m) return invalid("vector buffer length must be n*m");
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < m; ++t) {
            const auto z = f->impl.component(j, t);
            const size_t at = static_cast<size_t>(j) * m + t;
            re[at] = z.real();
            if (im != nullptr) im[at] = z.imag();
        }
    return ETF_OK;
}

double etf_frame_welch_bound(const etf_frame* f) {
    if (f == nullptr) return std::nan("");
    try {
        return etf::welch_bound(f->impl.size(), f->impl.dimension());
    } catch (const etf::Error& e) {
        set_error(e.what());
        return std::nan("");
    }
}

etf_status etf_frame_max_correlation(const etf_frame* f, double* out) {
    if (f == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = etf::max_frame_correlation(f->impl); });
}

etf_status etf_frame_tightness_residual(const etf_frame* f, double* out) {
    if (f == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = etf::tightness_residual(f->impl); });
}

etf_status etf_frame_equiangularity_residual(const etf_frame* f, double* out) {
    if (f == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] { *out = etf::equiangularity_residual(f->impl); });
}

etf_status etf_frame_welch_verdict(const etf_frame* f, int* is_etf, double* residual) {
    if (f == nullptr || is_etf == nullptr || residual == nullptr)
        return invalid("null argument");
    return guarded([&] {
        const auto rep = etf::verify_welch_equality(f->impl);
        *is_etf = rep.is_etf ? 1 : 0;
        *residual = rep.residual;
    });
}

etf_status etf_frame_subset_norm(const etf_frame* f, const int* subset, size_t count,
                                 int route, double* out, int* route_used) {
    if (f == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] {
        const auto s = copy_subset(subset, count);
        etf::SubsetNorm sn;
        switch (route) {
            case ETF_ROUTE_AUTO:
            case ETF_ROUTE_GRAM:
                sn = etf::subset_norm_gram(f->impl, s);
                break;
            case ETF_ROUTE_OUTER:
                sn = {etf::subset_norm_outer(f->impl, s), etf::NormRoute::outer_eig};
                break;
            default:
                throw etf::Error(etf::Errc::invalid_argument, "unknown subset norm route");
        }
        *out = sn.value;
        if (route_used != nullptr) *route_used = route_code(sn.route);
    });
}

/* ---- partition --------------------------------------------------------- */

etf_status etf_partition_diagonal(int k, int r, etf_partition** out) {
    if (out == nullptr) return invalid("null output handle");
    return guarded([&] {
        *out = new etf_partition{etf::diagonal_partition_algorithm(k, r).to_partition()};
    });
}

etf_status etf_partition_create(int n, size_t subset_count, const size_t* sizes,
                                const int* indices, etf_partition** out) {
    if (sizes == nullptr || indices == nullptr || out == nullptr)
        return invalid("null argument");
    return guarded([&] {
        std::vector<std::vector<int>> subsets;
        subsets.reserve(subset_count);
        size_t at = 0;
        for (size_t h = 0; h < subset_count; ++h) {
            subsets.emplace_back(indices + at, indices + at + sizes[h]);
            at += sizes[h];
        }
        *out = new etf_partition{etf::Partition(n, std::move(subsets))};
    });
}

void etf_partition_free(etf_partition* p) { delete p; }

int etf_partition_ground_size(const etf_partition* p) {
    return p ? p->impl.ground_size() : 0;
}

size_t etf_partition_count(const etf_partition* p) {
    return p ? static_cast<size_t>(p->impl.size()) : 0;
}

size_t etf_partition_subset_size(const etf_partition* p, size_t h) {
    if (p == nullptr || h >= static_cast<size_t>(p->impl.size())) return 0;
    return p->impl.subset(static_cast<int>(h)).size();
}

etf_status etf_partition_subset(const etf_partition* p, size_t h, int* buf, size_t len) {
    if (p == nullptr || buf == nullptr) return invalid("null argument");
    if (h >= static_cast<size_t>(p->impl.size())) return invalid("subset index out of range");
    const auto& s = p->impl.subset(static_cast<int>(h));
    if (len != s.size()) return invalid("subset buffer length mismatch");
    std::memcpy(buf, s.data(), len * sizeof(int));
    return ETF_OK;
}

int etf_partition_is_diagonal(const etf_partition* p) {
    return p != nullptr && etf::classify_diagonal(p->impl).has_value() ? 1 : 0;
}

etf_status etf_partition_layout(const etf_partition* p, char** out) {
    if (p == nullptr || out == nullptr) return invalid("null argument");
    return guarded([&] {
        const auto diagonal = etf::classify_diagonal(p->impl);
        if (!diagonal)
            throw etf::Error(etf::Errc::invalid_argument,
                             "layout rendering requires a diagonal partition");
        const std::string text = etf::render_block_layout(*diagonal);
        char* copy = new char[text.size() + 1];
        std::memcpy(copy, text.c_str(), text.size() + 1);
        *out = copy;
    });
}

void etf_string_free(char* s) { delete[] s; }

/* ---- bounds ------------------------------------------------------------ */

double etf_bound_mss(int r, double delta) {
    try {
        return etf::mss_bound(r, delta);
    } catch (const etf::Error& e) {
        set_error(e.what());
        return std::nan("");
    }
}

double etf_bound_diagonal(int r) {
    try {
        return etf::diagonal_bound(r);
    } catch (const etf::Error& e) {
        set_error(e.what());
        return std::nan("");
    }
}

double etf_bound_small(int r, double delta, int max_cardinality, int real_field) {
    try {
        return etf::small_subset_bound(r, delta, max_cardinality,
                                       real_field ? etf::FieldTag::real
                                                  : etf::FieldTag::complex);
    } catch (const etf::Error& e) {
        set_error(e.what());
        return std::nan("");
    }
}

etf_status etf_diagonal_norm_closed(int k, int d, double* out) {
    if (out == nullptr) return invalid("null argument");
    return guarded([&] { *out = etf::diagonal_subset_norm_closed(k, d); });
}

/* ---- verification -------------------------------------------------------- */

etf_status etf_check_partition(const etf_frame* f, const etf_partition* p,
                               etf_norm_report* reports, size_t count) {
    if (f == nullptr || p == nullptr || reports == nullptr) return invalid("null argument");
    if (count != static_cast<size_t>(p->impl.size()))
        return invalid("report buffer length must equal the subset count");
    return guarded([&] {
        const auto checked = etf::check_partition(p->impl, f->impl);
        for (size_t h = 0; h < checked.size(); ++h) {
            const auto& in = checked[h];
            etf_norm_report& out = reports[h];
            out.norm = in.norm;
            out.route = route_code(in.route);
            out.mss_bound = in.mss_bound;
            out.mss_ok = in.mss_ok ? 1 : 0;
            out.sharp_applicable = in.sharp_bound.has_value() ? 1 : 0;
            out.sharp_bound = in.sharp_bound.value_or(0.0);
            out.sharp_ok = in.sharp_ok ? 1 : 0;
            out.small_applicable = in.small_bound.has_value() ? 1 : 0;
            out.small_bound = in.small_bound.value_or(0.0);
            out.small_ok = in.small_ok ? 1 : 0;
        }
    });
}

etf_status etf_search_violation(const etf_frame* f, int r, uint64_t trials,
                                uint64_t seed, etf_search_result* result,
                                etf_partition** partition_out) {
    if (f == nullptr || result == nullptr) return invalid("null argument");
    return guarded([&] {
        auto search = etf::find_mss_violation(f->impl, r, trials, seed);
        result->found = search.found ? 1 : 0;
        result->trial = search.trial;
        result->norm = search.norm;
        result->mss_bound = search.bound;
        if (partition_out != nullptr) {
            *partition_out = search.partition.has_value()
                                 ? new etf_partition{std::move(*search.partition)}
                                 : nullptr;
        }
    });
}

} // extern "C"
