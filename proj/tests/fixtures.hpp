#pragma once
// Hand-authored fixtures. fixture_tree() mirrors the ice-rink proposal:
// two positive leaf comments plus one negative comment that triggered a
// nine-comment cascade with levels (1, 4, 4). fixture_corpus() is the
// 20-proposal / 60-comment corpus behind the golden files; shapes, titles
// and bodies are chosen to exercise both serializers (quotes, commas,
// newlines, non-ASCII, empty proposals).
#include <cstdio>
#include <string>
#include <tuple>
#include <vector>

#include "delib/thread_model.hpp"

namespace testsup {

inline delib::Comment make_comment(std::string id, std::string pid,
                                   std::optional<std::string> parent,
                                   std::optional<delib::Alignment> alignment,
                                   delib::Timestamp at,
                                   std::optional<std::string> body = std::nullopt) {
    delib::Comment c;
    c.id = std::move(id);
    c.proposal_id = std::move(pid);
    c.parent_id = std::move(parent);
    c.alignment = alignment;
    c.created_at = at;
    c.body = std::move(body);
    return c;
}

// 2016-02-15T10:00:00Z
inline constexpr delib::Timestamp kIceRinkT0 = 1455530400;

inline delib::DiscussionTree fixture_tree() {
    using enum delib::Alignment;
    const std::string pid = "ice-rink";
    std::vector<delib::Comment> comments;
    auto add = [&](const char* id, std::optional<std::string> parent,
                   std::optional<delib::Alignment> a, int minute,
                   std::optional<std::string> body = std::nullopt) {
        comments.push_back(
            make_comment(id, pid, std::move(parent), a, kIceRinkT0 + 60 * minute, std::move(body)));
    };
    add("c01", std::nullopt, Positive, 0, "Fantàstica idea, hi portaria els nens.");
    add("c02", std::nullopt, Positive, 5, "A favor, falta oferta esportiva d'hivern.");
    add("c03", std::nullopt, Negative, 9,
        "Fons públics per a una pista de gel en una ciutat mediterrània?");
    add("c04", "c03", std::nullopt, 14);
    add("c05", "c03", std::nullopt, 21, "El manteniment seria caríssim.");
    add("c06", "c03", std::nullopt, 30);
    add("c07", "c03", std::nullopt, 42);
    add("c08", "c04", std::nullopt, 55);
    add("c09", "c04", std::nullopt, 61);
    add("c10", "c05", std::nullopt, 70, "Es podria fer servir gel sintètic.");
    add("c11", "c06", std::nullopt, 84);
    return delib::build_tree(pid, "Pista de gel municipal", std::move(comments));
}

inline delib::Corpus fixture_corpus() {
    using enum delib::Alignment;
    delib::Corpus corpus;
    corpus.source = "civic-fixture";
    corpus.ingested_at = 1459468800;  // 2016-04-01T00:00:00Z

    delib::Timestamp t = 1454929200;  // 2016-02-08T11:00:00Z
    auto next = [&] { return t += 3600; };
    int serial = 0;
    auto cid = [&] {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "m%03d", ++serial);
        return std::string(buf);
    };

    auto add_tree = [&](const std::string& pid, const std::string& title,
                        std::vector<delib::Comment> comments) {
        corpus.trees.push_back(delib::build_tree(pid, title, std::move(comments)));
    };

    // four proposals nobody commented on
    add_tree("f01", "Més arbres al carrer Gran", {});
    add_tree("f02", "Quiet zone near hospital", {});
    add_tree("f03", "Carril bici a la Ronda", {});
    add_tree("f04", "Obrir els patis de les escoles", {});

    // four proposals with a single first-level comment
    for (auto [pid, title, a] :
         std::initializer_list<std::tuple<const char*, const char*, delib::Alignment>>{
             {"f05", "Horts urbans compartits", Neutral},
             {"f06", "Free wifi, squares & parks", Positive},
             {"f07", "Reduir soroll nocturn", Negative},
             {"f08", "Font nova a la plaça", Neutral}}) {
        std::string root = cid();
        add_tree(pid, title, {make_comment(root, pid, std::nullopt, a, next())});
    }

    // three with two comments: one cascade of size 2
    for (auto [pid, title, a] :
         std::initializer_list<std::tuple<const char*, const char*, delib::Alignment>>{
             {"f09", "Semàfors intel·ligents", Positive},
             {"f10", "Parc per a gossos", Neutral},
             {"f11", "\"Superilla\" al barri vell", Negative}}) {
        std::string root = cid();
        std::string reply = cid();
        add_tree(pid, title,
                 {make_comment(root, pid, std::nullopt, a, next(), "Primer comentari, amb coma."),
                  make_comment(reply, pid, root, std::nullopt, next())});
    }

    // three with three comments: chain of three (depth 3)
    for (auto [pid, title, a] :
         std::initializer_list<std::tuple<const char*, const char*, delib::Alignment>>{
             {"f12", "Bus nocturn fins al campus", Neutral},
             {"f13", "Murals d'art urbà", Positive},
             {"f14", "Limitar terrasses, més voreres", Negative}}) {
        std::string a1 = cid(), a2 = cid(), a3 = cid();
        add_tree(pid, title,
                 {make_comment(a1, pid, std::nullopt, a, next(), "Resposta \"directa\" al text."),
                  make_comment(a2, pid, a1, std::nullopt, next()),
                  make_comment(a3, pid, a2, std::nullopt, next(), "I una rèplica\nen dues línies.")});
    }

    // two with three comments: star of two replies under one root
    for (auto [pid, title, a] :
         std::initializer_list<std::tuple<const char*, const char*, delib::Alignment>>{
             {"f15", "Skate park sota el pont", Positive},
             {"f16", "Recollida orgànica diària", Neutral}}) {
        std::string root = cid();
        std::vector<delib::Comment> comments{
            make_comment(root, pid, std::nullopt, a, next())};
        for (int k = 0; k < 2; ++k)
            comments.push_back(make_comment(cid(), pid, root, std::nullopt, next()));
        add_tree(pid, title, std::move(comments));
    }

    // two with five comments: two cascades (3-node chain + 2-node)
    for (auto [pid, title] : std::initializer_list<std::pair<const char*, const char*>>{
             {"f17", "Biblioteca oberta els diumenges"}, {"f18", "Camí escolar segur"}}) {
        std::string a1 = cid(), a2 = cid(), a3 = cid(), b1 = cid(), b2 = cid();
        add_tree(pid, title,
                 {make_comment(a1, pid, std::nullopt, Negative, next()),
                  make_comment(a2, pid, a1, std::nullopt, next()),
                  make_comment(a3, pid, a2, std::nullopt, next()),
                  make_comment(b1, pid, std::nullopt, Positive, next()),
                  make_comment(b2, pid, b1, std::nullopt, next())});
    }

    // one shaped like the ice-rink proposal (9-comment negative cascade)
    {
        const std::string pid = "f19";
        std::string p1 = cid(), p2 = cid();
        std::string n1 = cid();
        std::string l2a = cid(), l2b = cid(), l2c = cid(), l2d = cid();
        std::string l3a = cid(), l3b = cid(), l3c = cid(), l3d = cid();
        add_tree(pid, "Pista de gel municipal (rèplica)",
                 {make_comment(p1, pid, std::nullopt, Positive, next()),
                  make_comment(p2, pid, std::nullopt, Positive, next()),
                  make_comment(n1, pid, std::nullopt, Negative, next(),
                               "En una ciutat mediterrània, això és malbaratar fons públics."),
                  make_comment(l2a, pid, n1, std::nullopt, next()),
                  make_comment(l2b, pid, n1, std::nullopt, next()),
                  make_comment(l2c, pid, n1, std::nullopt, next()),
                  make_comment(l2d, pid, n1, std::nullopt, next()),
                  make_comment(l3a, pid, l2a, std::nullopt, next()),
                  make_comment(l3b, pid, l2a, std::nullopt, next()),
                  make_comment(l3c, pid, l2b, std::nullopt, next()),
                  make_comment(l3d, pid, l2c, std::nullopt, next())});
    }

    // one larger mixed proposal: 14 comments, three cascades
    {
        const std::string pid = "f20";
        std::vector<delib::Comment> comments;
        std::string r1 = cid();  // neutral, wide: 4 direct replies
        comments.push_back(make_comment(r1, pid, std::nullopt, Neutral, next()));
        for (int k = 0; k < 4; ++k)
            comments.push_back(make_comment(cid(), pid, r1, std::nullopt, next()));
        std::string r2 = cid();  // negative, deep chain of 5
        comments.push_back(make_comment(r2, pid, std::nullopt, Negative, next()));
        std::string prev = r2;
        for (int k = 0; k < 4; ++k) {
            std::string idk = cid();
            comments.push_back(make_comment(idk, pid, prev, std::nullopt, next()));
            prev = idk;
        }
        std::string r3 = cid();  // positive with three replies
        comments.push_back(make_comment(r3, pid, std::nullopt, Positive, next()));
        for (int k = 0; k < 3; ++k)
            comments.push_back(make_comment(cid(), pid, r3, std::nullopt, next()));
        add_tree(pid, "Pacificar l'entorn de l'estació", std::move(comments));
    }
    return corpus;
}

} // namespace testsup
