#include <doctest.h>

#include <cstdio>
#include <vector>

#include "fastfood/errors.hpp"
#include "fastfood/serialize.hpp"

using namespace fastfood;

TEST_CASE("transform JSON round trip from seeds") {
    auto tf = FastfoodTransform::create(10, 48, MaternSpec{0.9, 2}, 31337);
    auto text = transform_to_json(tf);
    auto back = transform_from_json(text);

    CHECK(back.n == tf.n);
    CHECK(back.d_pad == tf.d_pad);
    CHECK(back.master_seed == tf.master_seed);
    REQUIRE(back.blocks.size() == tf.blocks.size());
    for (size_t k = 0; k < tf.blocks.size(); ++k) {
        CHECK(back.blocks[k].b == tf.blocks[k].b);
        CHECK(back.blocks[k].g == tf.blocks[k].g);
        CHECK(back.blocks[k].s == tf.blocks[k].s);
        CHECK(back.blocks[k].perm == tf.blocks[k].perm);
    }

    std::vector<double> x(10, 0.3), z1(48), z2(48);
    tf.project(x, z1);
    back.project(x, z2);
    CHECK(z1 == z2);
}

TEST_CASE("inlined arrays are verified on load") {
    auto tf = FastfoodTransform::create(6, 16, RbfSpec{1.1}, 99);
    auto text = transform_to_json(tf, true);
    CHECK_NOTHROW(transform_from_json(text));

    // corrupt one inlined coefficient
    auto pos = text.find("\"g\":[");
    REQUIRE(pos != std::string::npos);
    text.replace(pos + 5, 1, text[pos + 5] == '1' ? "2" : "1");
    CHECK_THROWS_AS(transform_from_json(text), data_error);
}

TEST_CASE("file round trip") {
    auto tf = FastfoodTransform::create(5, 8, RbfSpec{2.0}, 7);
    save_transform(tf, "tf_tmp.json", true);
    auto back = load_transform("tf_tmp.json");
    CHECK(back.blocks[0].s == tf.blocks[0].s);
    std::remove("tf_tmp.json");
}

TEST_CASE("spec variants round trip") {
    for (const KernelSpec& spec :
         {KernelSpec{RbfSpec{0.5}}, KernelSpec{MaternSpec{2.0, 3}},
          KernelSpec{DirectPolySpec{{1.0, 0.0, 0.5}}},
          KernelSpec{AnchoredSpec{1.5, 0.2}}}) {
        auto back = spec_from_json(spec_to_json(spec));
        CHECK(back.index() == spec.index());
    }
    DotProductSpec dp;
    dp.coeffs.d = 4;
    dp.coeffs.lambda = {0.25, 0.0, 0.75};
    auto back = spec_from_json(spec_to_json(KernelSpec{dp}));
    CHECK(std::get<DotProductSpec>(back).coeffs.lambda == dp.coeffs.lambda);
}

TEST_CASE("format and version are enforced") {
    CHECK_THROWS_AS(transform_from_json("{\"format\":\"other\"}"), data_error);
    CHECK_THROWS_AS(
        transform_from_json(
            "{\"format\":\"fastfood-transform\",\"version\":2,\"master_seed\":0,"
            "\"input_dim\":2,\"n\":2,\"spec\":{\"kernel\":\"rbf\",\"sigma\":1.0}}"),
        data_error);
}
