#include <doctest.h>

#include <random>
#include <set>

#include "atrc/protocol.hpp"

using namespace atrc;

namespace {

struct Node {
    RobotId id;
    CellCoord pos;
    bool forager = true;
    NeighborTable table;
    ProtocolMemory mem;

    Node(RobotId i, CellCoord p, std::vector<RobotId> nbrs) : id(i), pos(p), table(i) {
        for (RobotId n : nbrs) table.refresh(n, 0);
    }
    NodeView view() const { return {id, pos, forager, &table}; }
};

Packet rfant_from(RobotId coordinator, int needed, CellCoord target) {
    Packet p;
    p.kind = PacketKind::RFant;
    p.coordinator = coordinator;
    p.task_id = 0;
    p.fant_id = 7;
    p.crossed_path = {coordinator};
    p.target_cell = target;
    p.needed_robots = needed;
    return p;
}

CoordinatorState started(Node& c, Step now, std::vector<Outgoing>& out) {
    return coordinator_start(c.mem, c.view(), 0, c.pos, ProtocolParams{}, now, out);
}

}  // namespace

TEST_SUITE("protocol") {
    TEST_CASE("coordinator start floods a request and arms the reply timer") {
        Node c(0, {5, 5}, {1, 2});
        std::vector<Outgoing> out;
        const auto s = started(c, 100, out);
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == kNoRobot);
        CHECK(out[0].packet.kind == PacketKind::RtFant);
        CHECK(out[0].packet.crossed_path == std::vector<RobotId>{0});
        CHECK(out[0].packet.needed_robots == 3);
        CHECK(s.deadline == 110);
        CHECK(s.phase == CoordinatorPhase::Requesting);
        const RoutingRow* row = c.mem.routes.row({0, s.task.task_id, TaskType::Recruiting});
        REQUIRE(row);
        CHECK(row->at(1) == doctest::Approx(0.5));
    }

    TEST_CASE("simultaneous detections open distinct tasks") {
        Node a(0, {1, 1}, {}), b(1, {8, 8}, {});
        std::vector<Outgoing> out;
        const auto sa = started(a, 3, out);
        const auto sb = started(b, 3, out);
        CHECK(sa.task != sb.task);
        CHECK(started(a, 4, out).task.task_id == sa.task.task_id + 1);
    }

    TEST_CASE("an unheard request is repeated with a fresh id") {
        Node c(0, {5, 5}, {});
        std::vector<Outgoing> out;
        auto s = started(c, 100, out);
        out.clear();
        CHECK(coordinator_timeout(s, c.mem, c.view(), ProtocolParams{}, 109, 120, out) == TimeoutAction::None);
        CHECK(coordinator_timeout(s, c.mem, c.view(), ProtocolParams{}, 110, 120, out) == TimeoutAction::Rerequest);
        REQUIRE(out.size() == 1);
        CHECK(out[0].packet.fant_id != 0);
        CHECK(s.deadline == 120);
    }

    TEST_CASE("an echoed request with no replies is abandoned") {
        Node c(0, {5, 5}, {1});
        std::vector<Outgoing> out;
        auto s = started(c, 0, out);
        Packet echo = out[0].packet;
        echo.crossed_path.push_back(1);
        coordinator_record(s, echo, 1);
        CHECK(s.echoed);
        out.clear();
        CHECK(coordinator_timeout(s, c.mem, c.view(), ProtocolParams{}, 10, 120, out) == TimeoutAction::Abandon);
        CHECK(out.empty());
    }

    TEST_CASE("foragers answer a first request, drop duplicates, others only relay") {
        Node f(1, {3, 0}, {0, 2});
        Node c(0, {0, 0}, {1});
        std::vector<Outgoing> out;
        started(c, 0, out);
        const Packet req = out[0].packet;
        out.clear();
        RngStream rng(1);
        forager_handle_rtfant(f.mem, f.view(), req, rng, out);
        REQUIRE(out.size() == 2);
        CHECK(out[0].to == 0);
        CHECK(out[0].packet.kind == PacketKind::RtBant);
        CHECK(out[0].packet.origin == 1);
        CHECK(out[0].packet.path_degree == doctest::Approx(0.25));
        CHECK(out[1].to == kNoRobot);
        CHECK(out[1].packet.crossed_path == std::vector<RobotId>{0, 1});

        out.clear();
        forager_handle_rtfant(f.mem, f.view(), req, rng, out);
        CHECK(out.empty());

        Node busy(2, {6, 0}, {1});
        busy.forager = false;
        forager_handle_rtfant(busy.mem, busy.view(), req, rng, out);
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == kNoRobot);
    }

    TEST_CASE("reply probability follows the answered share") {
        CHECK(reply_probability({}) == 1.0);
        CHECK(reply_probability({1, 0}) == 1.0);
        CHECK(reply_probability({2, 1}) == doctest::Approx(0.5));
        CHECK(reply_probability({2, 5}) == 0.0);
    }

    TEST_CASE("hop-limited requests stop spreading") {
        Node f(2, {6, 0}, {1, 3});
        Packet req;
        req.kind = PacketKind::RtFant;
        req.coordinator = 0;
        req.crossed_path = {0, 1};
        req.hop_limit = 2;
        std::vector<Outgoing> out;
        RngStream rng(1);
        forager_handle_rtfant(f.mem, f.view(), req, rng, out);
        REQUIRE(out.size() == 1);
        CHECK(out[0].packet.kind == PacketKind::RtBant);
    }

    TEST_CASE("routing update worked example") {
        RoutingRow row{{1, 0.5}, {2, 0.5}};
        update_routing(row, 1, 1.0, 0.1, 0.3);
        CHECK(std::abs(row[1] - 0.625) <= 1e-12);
        CHECK(std::abs(row[2] - 0.375) <= 1e-12);
    }

    TEST_CASE("repeated reinforcement approaches one") {
        RoutingRow row{{1, 0.25}, {2, 0.25}, {3, 0.5}};
        double last = row[1];
        for (int i = 0; i < 20; ++i) {
            update_routing(row, 1, 0.5, 0.1, 0.3);
            CHECK(row[1] > last);
            last = row[1];
        }
        CHECK(last > 0.9);

        RoutingRow single{{4, 1.0}};
        update_routing(single, 4, 0.3, 0.1, 0.3);
        CHECK(single[4] == doctest::Approx(1.0));
    }

    TEST_CASE("rows stay normalised") {
        std::mt19937_64 gen(12);
        std::uniform_real_distribution<double> u(0.01, 1.0);
        RoutingRow row{{0, 0.2}, {1, 0.3}, {2, 0.5}};
        for (int i = 0; i < 1000; ++i) {
            update_routing(row, static_cast<RobotId>(gen() % 5), u(gen), 0.1, 0.3);
            double sum = 0.0;
            for (const auto& [_, p] : row) sum += p;
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }

    TEST_CASE("reply timer: enough replies send an R-FANT on the best link") {
        Node c(0, {0, 0}, {1, 2, 3});
        std::vector<Outgoing> out;
        auto s = started(c, 0, out);
        out.clear();
        c.mem.routes.reinforce({0, s.task.task_id, TaskType::Recruiting}, 2, 0.5, 0.1, 0.3);
        for (RobotId r = 4; r < 9; ++r) s.replies.emplace_back(r, 2.0);
        CHECK(coordinator_timeout(s, c.mem, c.view(), ProtocolParams{}, 10, 120, out) == TimeoutAction::Recruit);
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == 2);
        CHECK(out[0].packet.kind == PacketKind::RFant);
        CHECK(out[0].packet.needed_robots == 3);
        CHECK(s.phase == CoordinatorPhase::Recruiting);
        CHECK(s.deadline == 130);
    }

    TEST_CASE("reply timer: too few replies re-request") {
        Node c(0, {0, 0}, {1});
        std::vector<Outgoing> out;
        auto s = started(c, 0, out);
        const int first = s.fant_id;
        out.clear();
        s.replies = {{1, 1.0}, {2, 2.0}};
        CHECK(coordinator_timeout(s, c.mem, c.view(), ProtocolParams{}, 10, 120, out) == TimeoutAction::Rerequest);
        REQUIRE(out.size() == 1);
        CHECK(out[0].packet.kind == PacketKind::RtFant);
        CHECK(out[0].packet.fant_id != first);
    }

    TEST_CASE("R-FANT chain A -> B -> C with two robots needed") {
        Node b(1, {3, 0}, {0, 2});
        Node cc(2, {6, 0}, {1});
        std::vector<Outgoing> out;
        const auto ob = handle_rfant(b.mem, b.view(), rfant_from(0, 2, {0, 0}), out);
        CHECK(ob.accepted);
        REQUIRE(out.size() == 2);
        CHECK(out[0].to == 0);
        CHECK(out[0].packet.kind == PacketKind::RBant);
        CHECK(out[1].to == 2);
        CHECK(out[1].packet.needed_robots == 1);
        const Packet forwarded = out[1].packet;

        out.clear();
        const auto oc = handle_rfant(cc.mem, cc.view(), forwarded, out);
        CHECK(oc.accepted);
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == 1);
        CHECK(out[0].packet.kind == PacketKind::RBant);
        CHECK(out[0].packet.crossed_path == std::vector<RobotId>{0, 1, 2});

        out.clear();
        CHECK(handle_rfant(cc.mem, cc.view(), forwarded, out).duplicate);
        CHECK(out.empty());
    }

    TEST_CASE("a busy robot forwards an R-FANT without accepting") {
        Node b(1, {3, 0}, {0, 2, 3});
        b.forager = false;
        b.mem.routes.ensure_row({0, 0, TaskType::Recruiting}, std::vector<RobotId>{0, 2, 3});
        b.mem.routes.reinforce({0, 0, TaskType::Recruiting}, 3, 0.8, 0.1, 0.3);
        std::vector<Outgoing> out;
        const auto o = handle_rfant(b.mem, b.view(), rfant_from(0, 2, {0, 0}), out);
        CHECK_FALSE(o.accepted);
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == 3);
        CHECK(out[0].packet.needed_robots == 2);
    }

    TEST_CASE("a lost R-FANT is re-routed on the next best link") {
        Node b(1, {3, 0}, {0, 2, 3});
        std::vector<Outgoing> out;
        Packet lost = rfant_from(0, 2, {0, 0});
        lost.crossed_path = {0, 1};
        CHECK(reroute_rfant(b.mem, b.view(), lost, 2, out));
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == 3);
        out.clear();
        Node end(1, {3, 0}, {0, 2});
        CHECK_FALSE(reroute_rfant(end.mem, end.view(), lost, 2, out));
    }

    TEST_CASE("backward ants walk the forward path in reverse") {
        Node mid(1, {3, 0}, {0, 2});
        Packet bant;
        bant.kind = PacketKind::RtBant;
        bant.coordinator = 0;
        bant.crossed_path = {0, 1, 2};
        bant.origin = 2;
        bant.path_degree = 0.2;
        std::vector<Outgoing> out;
        CHECK_FALSE(handle_backward_ant(mid.mem, mid.view(), bant, 2, ProtocolParams{}, out));
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == 0);
        CHECK(mid.mem.counters[{0, 0}].bants_sent == 1);

        Node c(0, {0, 0}, {1});
        out.clear();
        CHECK(handle_backward_ant(c.mem, c.view(), bant, 1, ProtocolParams{}, out));
        CHECK(out.empty());
    }

    TEST_CASE("complete team starts disarming; surplus recruits get an LP") {
        Node c(0, {0, 0}, {1});
        std::vector<Outgoing> out;
        auto s = started(c, 0, out);
        s.phase = CoordinatorPhase::Waiting;
        s.deadline = 1000;
        s.confirmed = {1, 2, 3};
        s.arrived = {1, 2, 3};
        out.clear();
        CHECK(coordinator_manage_arrivals(s, c.mem, c.view(), ProtocolParams{}, 20, out) == ArrivalAction::StartDisarm);
        CHECK(out.empty());

        auto t = started(c, 0, out);
        t.phase = CoordinatorPhase::Waiting;
        t.deadline = 1000;
        t.confirmed = {1, 2, 3, 4};
        t.arrived = {1, 2, 3};
        out.clear();
        CHECK(coordinator_manage_arrivals(t, c.mem, c.view(), ProtocolParams{}, 20, out) == ArrivalAction::StartDisarm);
        REQUIRE(out.size() == 1);
        CHECK(out[0].packet.kind == PacketKind::Lp);
    }

    TEST_CASE("arrival timeout releases stragglers and asks again") {
        Node c(0, {0, 0}, {1});
        std::vector<Outgoing> out;
        auto s = started(c, 0, out);
        s.phase = CoordinatorPhase::Waiting;
        s.deadline = 50;
        s.last_confirm = 45;
        s.confirmed = {1, 2};
        s.arrived = {1};
        out.clear();
        CHECK(coordinator_manage_arrivals(s, c.mem, c.view(), ProtocolParams{}, 49, out) == ArrivalAction::None);
        CHECK(coordinator_manage_arrivals(s, c.mem, c.view(), ProtocolParams{}, 50, out) == ArrivalAction::Rerequest);
        REQUIRE(out.size() == 2);
        CHECK(out[0].packet.kind == PacketKind::Lp);
        CHECK(out[1].packet.kind == PacketKind::RtFant);
        CHECK(out[1].packet.needed_robots == 2);
        CHECK(s.confirmed == std::set<RobotId>{1});
    }

    TEST_CASE("LP floods once per robot") {
        Node n(3, {0, 0}, {1});
        Packet lp;
        lp.kind = PacketKind::Lp;
        lp.coordinator = 0;
        lp.fant_id = 9;
        std::vector<Outgoing> out;
        CHECK(handle_lp(n.mem, n.view(), lp, out));
        CHECK(out.size() == 1);
        CHECK_FALSE(handle_lp(n.mem, n.view(), lp, out));
        CHECK(out.size() == 1);
    }

    TEST_CASE("forgetting a task clears its state") {
        Node f(1, {3, 0}, {0, 2});
        std::vector<Outgoing> out;
        handle_rfant(f.mem, f.view(), rfant_from(0, 1, {0, 0}), out);
        CHECK(f.mem.routes.size() == 1);
        f.mem.forget_task({0, 0});
        CHECK(f.mem.routes.size() == 0);
        CHECK(f.mem.seen.size() == 0);
    }
}
