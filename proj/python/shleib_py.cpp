// Python bindings: documents in, plain dicts and lists out.
#include "shleib/coalgebra.hpp"
#include "shleib/derived.hpp"
#include "shleib/document.hpp"
#include "shleib/gauge.hpp"
#include "shleib/leibniz.hpp"
#include "shleib/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace shleib;

namespace {

py::list violations(const GradedBasis& basis, const Violations& v) {
    py::list out;
    for (const auto& x : v) {
        py::list tuple;
        for (int b : x.tuple) tuple.append(basis.name(static_cast<std::size_t>(b)));
        py::dict d;
        d["label"] = x.label;
        d["scope"] = x.scope;
        d["tuple"] = tuple;
        d["residual"] = x.residual;
        out.append(d);
    }
    return out;
}

py::dict table(const MultiOp& f) {
    py::dict d;
    for (const auto& [t, img] : f.constants()) {
        py::list key;
        for (int b : t) key.append(f.basis().name(static_cast<std::size_t>(b)));
        d[py::tuple(key)] = img.render(f.basis());
    }
    return d;
}

class PyModel {
public:
    explicit PyModel(const std::string& text) : doc_(parse_document(text)), m_(build_model(doc_)) {}

    static PyModel from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot read " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return PyModel(ss.str());
    }

    [[nodiscard]] py::list basis() const {
        py::list out;
        for (const auto& e : m_.basis->entries()) out.append(py::make_tuple(e.name, e.degree));
        return out;
    }
    [[nodiscard]] std::string serialize_doc() const { return serialize(doc_); }
    [[nodiscard]] bool has_family() const { return m_.has_family(); }
    [[nodiscard]] int order() const { return m_.family().order(); }

    [[nodiscard]] py::list leibniz(bool first) const {
        return violations(*m_.basis, check_leibniz_identity(m_.bracket, {first}));
    }
    [[nodiscard]] py::list deformation(std::optional<int> max_order, bool first) const {
        return violations(*m_.basis, check_deformation(m_.bracket, m_.family(), max_order, {first}));
    }
    [[nodiscard]] py::list sh(int max_const, bool first) const {
        const auto s = build_sh_structure(m_.bracket, m_.family());
        return violations(*s.shifted_basis, check_sh_leibniz(s, max_const, {first}));
    }
    [[nodiscard]] py::list codiff(int max_len, bool first) const {
        return violations(*m_.basis, check_codifferential(m_.bracket, m_.family(), max_len, {first}));
    }
    [[nodiscard]] py::list routes() const {
        const auto fam = m_.family();
        auto v = compare_derived_routes(m_.bracket, fam);
        for (auto& x : compare_partial_routes(m_.bracket, fam)) v.push_back(std::move(x));
        return violations(*m_.basis, v);
    }
    [[nodiscard]] py::list derived() const {
        const auto s = build_sh_structure(m_.bracket, m_.family());
        py::list out;
        for (int i = 1; i <= s.max_arity(); ++i) out.append(table(*s.op(i)));
        return out;
    }
    [[nodiscard]] py::list gauge_transformed() const {
        if (!m_.gauge) throw MalformedInput("document declares no gauge");
        const auto fam = m_.family();
        const auto out = gauge_transform(fam, *m_.gauge, fam.order());
        py::list l;
        for (const auto& d : out.deltas()) l.append(table(d));
        return l;
    }
    [[nodiscard]] py::list gauge_equivalence(int max_len, bool first) const {
        if (!m_.gauge) throw MalformedInput("document declares no gauge");
        return violations(*m_.basis, check_gauge_equivalence(m_.bracket, m_.family(), *m_.gauge, max_len, {first}));
    }
    [[nodiscard]] py::list key_lemma(int max_arity) const {
        const auto ders = all_derivations(m_.bracket);
        Violations v;
        for (const auto& D : ders)
            for (const auto& Dp : ders)
                for (int i = 1; i <= max_arity; ++i)
                    for (int j = 1; j <= max_arity; ++j)
                        for (auto& x : check_key_lemma(m_.bracket, D, Dp, i, j)) v.push_back(std::move(x));
        return violations(*m_.basis, v);
    }
    [[nodiscard]] py::list dual_leibniz(int max_len) const {
        return violations(*m_.basis, check_dual_leibniz(*m_.basis, max_len));
    }

    [[nodiscard]] std::string run(const std::string& command, int max_const, int max_word_len, int max_arity, bool first,
                                  const std::string& format, bool timing) const {
        RunOptions opt{max_const, max_word_len, max_arity, first};
        const auto r = run_command(doc_, command, opt);
        if (format == "text") return render_text(r, timing);
        if (format == "structured") return render_structured(r, timing);
        throw UsageError("format must be 'text' or 'structured'");
    }

private:
    AlgebraDocument doc_;
    Model m_;
};

}  // namespace

PYBIND11_MODULE(shleib, mod) {
    mod.doc() = "Exact checks for Leibniz algebras, their derived brackets and sh Leibniz structures";

    py::register_exception<MalformedInput>(mod, "MalformedInput", PyExc_ValueError);
    py::register_exception<PreconditionError>(mod, "PreconditionError", PyExc_RuntimeError);

    mod.def("koszul_sign", [](const std::vector<int>& images, const std::vector<int>& degrees) {
        return koszul_sign(Permutation(images), degrees).sign();
    }, py::arg("images"), py::arg("degrees"));
    mod.def("anti_koszul_sign", [](const std::vector<int>& images, const std::vector<int>& degrees) {
        return anti_koszul_sign(Permutation(images), degrees).sign();
    }, py::arg("images"), py::arg("degrees"));
    mod.def("unshuffles", [](int p, int q) {
        std::vector<std::vector<int>> out;
        for (const auto& s : unshuffles(p, q)) out.push_back(s.images());
        return out;
    }, py::arg("p"), py::arg("q"));
    mod.def("derived_bracket_prefactor", [](int i) { return derived_bracket_prefactor(i).sign(); }, py::arg("i"));
    mod.def("normalize_rational", [](const std::string& s) { return Scalar::parse(s).str(); }, py::arg("text"));
    mod.def("commands", &known_commands);

    py::class_<PyModel>(mod, "Model")
        .def(py::init<const std::string&>(), py::arg("text"))
        .def_static("from_file", &PyModel::from_file, py::arg("path"))
        .def_property_readonly("basis", &PyModel::basis)
        .def_property_readonly("has_family", &PyModel::has_family)
        .def_property_readonly("order", &PyModel::order)
        .def("serialize", &PyModel::serialize_doc)
        .def("check_leibniz", &PyModel::leibniz, py::arg("first_violation") = false)
        .def("check_deformation", &PyModel::deformation, py::arg("max_order") = std::nullopt,
             py::arg("first_violation") = false)
        .def("check_sh", &PyModel::sh, py::arg("max_const") = 6, py::arg("first_violation") = false)
        .def("check_codifferential", &PyModel::codiff, py::arg("max_word_len") = 4, py::arg("first_violation") = false)
        .def("compare_routes", &PyModel::routes)
        .def("derived_brackets", &PyModel::derived)
        .def("gauge_transform", &PyModel::gauge_transformed)
        .def("check_gauge_equivalence", &PyModel::gauge_equivalence, py::arg("max_word_len") = 4,
             py::arg("first_violation") = false)
        .def("check_key_lemma", &PyModel::key_lemma, py::arg("max_arity") = 3)
        .def("check_dual_leibniz", &PyModel::dual_leibniz, py::arg("max_word_len") = 4)
        .def("run", &PyModel::run, py::arg("command"), py::arg("max_const") = 6, py::arg("max_word_len") = 4,
             py::arg("max_arity") = 3, py::arg("first_violation") = false, py::arg("format") = "structured",
             py::arg("timing") = false);
}
