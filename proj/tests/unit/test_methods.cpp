// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include "cvefix/language.hpp"
#include "cvefix/lexer.hpp"
#include "cvefix/methods.hpp"

using namespace cvefix;

namespace {

MethodScan scan(std::string_view source, std::string_view language) {
    const auto* spec = find_language(language);
    REQUIRE(spec != nullptr);
    return find_methods(lex(source, spec), *spec);
}

}  // namespace

TEST_CASE("C functions with spans and signatures", "[methods]") {
    const auto s = scan("/* header */\n#include <stdio.h>\n\nstatic int add(int a, int b)\n{\n    return a + b;\n}\n\n"
                        "void noop(void) {}\nint proto(int x);\n",
                        "C");
    CHECK_FALSE(s.problem);
    REQUIRE(s.methods.size() == 2);
    CHECK(s.methods[0].name == "add");
    CHECK(s.methods[0].signature() == "add(int a, int b)");
    CHECK(s.methods[0].start_line == 4);
    CHECK(s.methods[0].end_line == 7);
    CHECK(s.methods[1].name == "noop");
    CHECK(s.methods[1].start_line == 9);
}

TEST_CASE("class members in C++ and Java", "[methods]") {
    const auto cpp = scan("namespace n {\nclass A {\npublic:\n  int f(int x) const { return x; }\n};\n"
                          "int A::g() { return 1; }\n}\n",
                          "C++");
    REQUIRE(cpp.methods.size() == 2);
    CHECK(cpp.methods[0].name == "f");
    CHECK(cpp.methods[1].name == "A::g");

    const auto java = scan("class B {\n  public static void main(String[] args) {\n    if (args.length > 0) {}\n  }\n}\n",
                           "Java");
    REQUIRE(java.methods.size() == 1);
    CHECK(java.methods[0].name == "main");
    CHECK(java.methods[0].parameters == std::vector<std::string>{"String[] args"});
}

TEST_CASE("Python and Ruby blocks", "[methods]") {
    const auto py = scan("import os\n\nclass C:\n    def m(self, a):\n        return a\n\n\ndef top():\n    pass\n", "Python");
    REQUIRE(py.methods.size() == 2);
    CHECK(py.methods[0].name == "m");
    CHECK(py.methods[0].start_line == 4);
    CHECK(py.methods[0].end_line == 5);
    CHECK(py.methods[1].name == "top");

    const auto rb = scan("module M\n  def self.clean(path)\n    path.strip\n  end\n\n  def valid?\n    true\n  end\nend\n",
                         "Ruby");
    REQUIRE(rb.methods.size() == 2);
    CHECK(rb.methods[0].name == "self.clean");
    CHECK(rb.methods[0].end_line == 4);
    CHECK(rb.methods[1].name == "valid?");
}

TEST_CASE("unbalanced braces are reported", "[methods]") {
    const auto s = scan("int f(void) {\n  if (x) {\n", "C");
    CHECK(s.problem);
}

TEST_CASE("language detection", "[methods]") {
    CHECK(detect_language("a.py", "anything") == "Python");
    CHECK(detect_language("x.h", "template<typename T>\nclass V {};\n") == "C++");
    CHECK(detect_language("x.h", "int f(void);\n") == "C");
    CHECK_FALSE(detect_language("blob.bin", std::string_view("\x00\x01\xff\xfe", 4)));
    CHECK(detect_language("run", "#!/usr/bin/env python3\nprint(1)\n") == "Python");
    CHECK(supported_languages().size() >= 30);
}
