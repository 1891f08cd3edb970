#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stratcat/io.hpp"
#include "support/corpus.hpp"

using namespace stratcat;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto dir = std::filesystem::temp_directory_path() / "stratcat_io_tests";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream out(p);
    out << text;
    return p;
}

int run(const std::vector<std::string>& args, std::string* outText = nullptr) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    if (outText) *outText = out.str();
    return code;
}

std::string pseudo_circle_json() {
    Document d{"poset", kFormatVersion, corpus::pseudo_circle()};
    return emit_document(d);
}

std::string dvr_json() {
    Document d{"layered", kFormatVersion, corpus::standard_dvr()};
    return emit_document(d);
}

} // namespace

TEST_CASE("document round trips are byte stable") {
    std::vector<Document> docs;
    docs.push_back({"poset", kFormatVersion, corpus::pseudo_circle()});
    docs.push_back({"space", kFormatVersion, alexandroff(chain_poset(3))});
    docs.push_back({"category", kFormatVersion, corpus::standard_dvr().cat});
    docs.push_back({"layered", kFormatVersion, corpus::standard_dvr()});
    docs.push_back({"decollage", kFormatVersion, nerve(poset_over_itself(chain_poset(3)))});
    {
        SheafDoc S;
        S.cat = cat_from_poset(chain_poset(2));
        S.F.size = {2, 1};
        S.F.map = {{0, 1}, {0}, {0, 0}};
        docs.push_back({"sheaf", kFormatVersion, S});
    }
    docs.push_back({"tower", kFormatVersion, curve_base_tower(2, 3)});
    docs.push_back({"group", kFormatVersion, symmetric_group(3)});
    docs.push_back({"curve", kFormatVersion, corpus::criterion7_spec()});
    for (const auto& d : docs) {
        CAPTURE(d.kind);
        std::string one = emit_document(d);
        Document reloaded = load_document(one);
        CHECK(reloaded.kind == d.kind);
        std::string two = emit_document(reloaded);
        CHECK(one == two);
        // and once more through the loader
        CHECK(emit_document(load_document(two)) == two);
    }
}

TEST_CASE("loading rejects bad documents") {
    CHECK_THROWS_AS(load_document("{not json"), ParseError);
    CHECK_THROWS_AS(load_document("{\"kind\":\"sandwich\"}"), ParseError);
    // conservativity failure: [1] over the point
    Document bad{"layered", kFormatVersion,
                 LayeredCat{cat_from_poset(chain_poset(2)), chain_poset(1), {0, 0}}};
    CHECK_THROWS_AS(load_document(emit_document(bad)), ValidationError);
    // antisymmetry failure
    CHECK_THROWS_AS(
        load_document("{\"kind\":\"poset\",\"version\":1,\"elements\":[\"a\",\"b\"],"
                      "\"relations\":[[\"a\",\"b\"],[\"b\",\"a\"]]}"),
        ValidationError);
}

TEST_CASE("dot emission") {
    Document interval{"poset", kFormatVersion, chain_poset(2)};
    std::string dot = emit_dot(interval);
    CHECK(dot.find("n0 -> n1") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '>') == 1);

    Document pc{"poset", kFormatVersion, corpus::pseudo_circle()};
    std::string pcDot = emit_dot(pc);
    CHECK(std::count(pcDot.begin(), pcDot.end(), '>') == 4); // the four cover edges

    Document dvr{"layered", kFormatVersion, corpus::standard_dvr()};
    std::string dvrDot = emit_dot(dvr);
    CHECK(dvrDot.find("cluster_0") != std::string::npos);
    CHECK(dvrDot.find("cluster_1") != std::string::npos);
    CHECK(std::count(dvrDot.begin(), dvrDot.end(), '\n') > 8);
    size_t dashed = 0, pos = 0;
    while ((pos = dvrDot.find("style=dashed", pos)) != std::string::npos) {
        dashed++;
        pos++;
    }
    CHECK(dashed == 6); // the six link morphisms

    // identical input, identical bytes
    CHECK(emit_dot(dvr) == emit_dot(dvr));

    Document space{"space", kFormatVersion, alexandroff(chain_poset(2))};
    CHECK_THROWS_WITH_AS(emit_dot(space), doctest::Contains("UnsupportedKind"), DomainError);
}

TEST_CASE("CLI subcommands produce documents") {
    auto pc = write_temp("pc.json", pseudo_circle_json());
    std::string out;
    CHECK(run({"sd", pc.string()}, &out) == 0);
    Document sdDoc = load_document(out);
    CHECK(std::get<FinPoset>(sdDoc.payload).size() == 12); // chains of the pseudo-circle

    CHECK(run({"alexandroff", pc.string()}, &out) == 0);
    Document sp = load_document(out);
    auto spPath = write_temp("pc_space.json", out);
    CHECK(run({"specialize", spPath.string()}, &out) == 0);
    CHECK(are_posets_isomorphic(std::get<FinPoset>(load_document(out).payload),
                                corpus::pseudo_circle()));

    auto dvr = write_temp("dvr.json", dvr_json());
    CHECK(run({"nerve", dvr.string()}, &out) == 0);
    auto nervePath = write_temp("dvr_nerve.json", out);
    CHECK(run({"reassemble", nervePath.string()}, &out) == 0);
    const auto& back = std::get<LayeredCat>(load_document(out).payload);
    CHECK(are_equivalent_layered(back, corpus::standard_dvr()).has_value());
}

TEST_CASE("CLI check commands and the exit-code contract") {
    auto pc = write_temp("pc2.json", pseudo_circle_json());
    auto dvr = write_temp("dvr2.json", dvr_json());
    auto garbled = write_temp("garbled.json", "{broken");
    Document badLayered{"layered", kFormatVersion,
                        LayeredCat{cat_from_poset(chain_poset(2)), chain_poset(1), {0, 0}}};
    auto bad = write_temp("bad_layered.json", emit_document(badLayered));

    std::string out;
    // 1: valid document
    CHECK(run({"validate", pc.string()}, &out) == 0);
    // 2: garbled input
    CHECK(run({"validate", garbled.string()}) == 2);
    // 3: validation failure
    CHECK(run({"validate", bad.string()}) == 1);
    // 4: exodromy check passes with the documented value
    CHECK(run({"exodromy", pc.string(), "--k", "2"}, &out) == 0);
    CHECK(out == "ok: 4 = 4\n");
    // 5: subdivision of [2] has 7 elements
    auto c3 = write_temp("c3.json", emit_document({"poset", kFormatVersion, chain_poset(3)}));
    CHECK(run({"sd", c3.string()}, &out) == 0);
    CHECK(std::get<FinPoset>(load_document(out).payload).size() == 7);
    // 6: van Kampen on the DVR document
    CHECK(run({"vankampen", dvr.string()}, &out) == 0);
    CHECK(out == "ok: H0=Z, H1=Z/2\n");
    // 7: unknown subcommand is a usage error
    CHECK(run({"frobnicate", pc.string()}) == 2);
    // 8: unknown element in a flag is a check failure
    CHECK(run({"classify-subposet", pc.string(), "--subset", "zz"}) == 1);
    // 9: cap breach exits 1 with a CapExceeded message
    CHECK(run({"count-functors", dvr.string(), "--k", "2", "--cap", "3"}) == 1);
    // 10: dot on an unsupported kind
    auto spacePath =
        write_temp("space.json", emit_document({"space", kFormatVersion, alexandroff(chain_poset(2))}));
    CHECK(run({"dot", spacePath.string()}) == 1);
}

TEST_CASE("CLI curve and homology commands") {
    auto curve = write_temp("curve.json",
                            emit_document({"curve", kFormatVersion, corpus::criterion7_spec()}));
    std::string out;
    CHECK(run({"curve", curve.string()}, &out) == 0);
    const auto& L = std::get<LayeredCat>(load_document(out).payload);
    CHECK(L.cat.n_obj() == 3);

    CHECK(run({"h1-presentation", "--genus", "2", "--punctures", "3"}, &out) == 0);
    CHECK(out == "H1 = Z^4\n");

    auto pcl = write_temp("pc_layered.json",
                          emit_document({"layered", kFormatVersion,
                                         LayeredCat{cat_from_poset(corpus::pseudo_circle()),
                                                    chain_poset(2), {0, 0, 1, 1}}}));
    CHECK(run({"h1-presentation", pcl.string()}, &out) == 0);
    CHECK(out == "H1 = Z\n");

    CHECK(run({"homology", pcl.string(), "--max-dim", "2"}, &out) == 0);
    CHECK(out.find("H1 = Z\n") != std::string::npos);

    CHECK(run({"--version"}, &out) == 0);
    CHECK(out == "1\n");
}
