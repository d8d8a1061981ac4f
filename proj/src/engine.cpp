#include "atrc/engine.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace atrc {

void SimConfig::validate() const {
    if (grid.width <= 0 || grid.height <= 0) throw std::invalid_argument("grid dimensions must be positive");
    if (robots.count < 1) throw std::invalid_argument("at least one robot is required");
    if (!robots.starts.empty() && static_cast<int>(robots.starts.size()) != robots.count) {
        throw std::invalid_argument("robot start list does not match robot count");
    }
    if (grid.random_mines < 0) throw std::invalid_argument("random mine count must be >= 0");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
    pheromone.validate();
    policy.validate();
    net.validate();
    protocol.validate();
    if (stigmergy.theta_threshold <= 0.0) throw std::invalid_argument("theta_threshold must be > 0");
    if (team.patience < 0 || team.cooldown < 0) throw std::invalid_argument("team timers must be >= 0");
    if (mode != Mode::ExplorationOnly && protocol.r_min > robots.count) {
        throw std::invalid_argument("r_min exceeds the number of robots");
    }
    const auto in_grid = [&](CellCoord c) { return c.x >= 0 && c.y >= 0 && c.x < grid.width && c.y < grid.height; };
    for (const auto& c : grid.obstacles) {
        if (!in_grid(c)) throw std::invalid_argument("obstacle out of bounds: " + to_string(c));
    }
    for (const auto& c : grid.mines) {
        if (!in_grid(c)) throw std::invalid_argument("mine out of bounds: " + to_string(c));
        if (std::find(grid.obstacles.begin(), grid.obstacles.end(), c) != grid.obstacles.end()) {
            throw std::invalid_argument("mine on obstacle: " + to_string(c));
        }
    }
    for (std::size_t i = 0; i < robots.starts.size(); ++i) {
        const auto& c = robots.starts[i];
        if (!in_grid(c)) throw std::invalid_argument("robot start out of bounds: " + to_string(c));
        if (std::find(grid.obstacles.begin(), grid.obstacles.end(), c) != grid.obstacles.end()) {
            throw std::invalid_argument("robot start on obstacle: " + to_string(c));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (robots.starts[j] == c) throw std::invalid_argument("two robots share start cell " + to_string(c));
        }
    }
    const long long free_cells = static_cast<long long>(grid.width) * grid.height -
                                 static_cast<long long>(grid.obstacles.size());
    if (mine_count() > free_cells) throw std::invalid_argument("more mines than free cells");
    if (robots.starts.empty() && mine_count() + robots.count > free_cells) {
        throw std::invalid_argument("not enough free cells for random robot placement");
    }
}

Step SimConfig::arrival_timeout() const {
    if (protocol.arrival_timeout > 0) return protocol.arrival_timeout;
    return 4 * static_cast<Step>(std::max(grid.width, grid.height));
}

Step SimConfig::team_patience() const {
    return team.patience > 0 ? team.patience : arrival_timeout();
}

Simulation::Simulation(SimConfig config, RunOptions options)
    : config_((config.validate(), std::move(config))),
      options_(options),
      rng_(config_.seed),
      world_(config_.grid.width, config_.grid.height),
      field_(config_.grid.width, config_.grid.height, config_.pheromone),
      medium_(config_.net) {
    move_settings_.mode = config_.mode;
    move_settings_.exploration = config_.exploration;
    move_settings_.scores = config_.policy;
    move_settings_.theta_threshold = config_.stigmergy.theta_threshold;
    move_settings_.abandon_factor = config_.protocol.abandon_factor;
    move_settings_.static_foragers = config_.static_foragers;

    log_.mode = config_.mode;
    log_.robots = config_.robots.count;
    log_.mines = config_.mine_count();
    log_.width = config_.grid.width;
    log_.height = config_.grid.height;
    log_.seed = config_.seed;
    log_.r_min = config_.protocol.r_min;

    place_entities();
    medium_.set_trace(&trace_buffer_);
    inbox_.resize(robots_.size());

    if (options_.packet_trace) *options_.packet_trace << "step,kind,sender,receiver,coordinator,taskId\n";
    if (options_.robot_trace) *options_.robot_trace << "step,id,x,y,state\n";
    if (options_.field_dump) *options_.field_dump << "step,x,y,tau,theta\n";

    if (config_.mode == Mode::Protocol) emit_hello(medium_, positions(), 0);
    trace_buffer_.clear();
    dump_step();
}

void Simulation::place_entities() {
    for (const auto& c : config_.grid.obstacles) world_.add_obstacle(c);
    for (const auto& c : config_.grid.mines) world_.add_mine(c);

    auto is_start = [&](CellCoord c) {
        return std::find(config_.robots.starts.begin(), config_.robots.starts.end(), c) !=
               config_.robots.starts.end();
    };
    auto free_cells = [&] {
        std::vector<CellCoord> cells;
        for (std::size_t i = 0; i < world_.cell_count(); ++i) {
            const CellCoord c = world_.coord(i);
            if (!world_.is_obstacle(c) && !world_.mine_at(c) && !is_start(c)) cells.push_back(c);
        }
        return cells;
    };
    // Partial Fisher-Yates: the first k entries become a uniform sample
    // without replacement.
    auto sample = [](std::vector<CellCoord>& cells, std::size_t k, RngStream& rng) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + rng.uniform_index(cells.size() - i);
            std::swap(cells[i], cells[j]);
        }
        cells.resize(k);
    };

    if (config_.grid.random_mines > 0) {
        auto cells = free_cells();
        auto rng = rng_.stream(RngConsumer::Placement, 0, 0);
        sample(cells, static_cast<std::size_t>(config_.grid.random_mines), rng);
        for (const auto& c : cells) world_.add_mine(c);
    }

    std::vector<CellCoord> starts = config_.robots.starts;
    if (starts.empty()) {
        starts = free_cells();
        auto rng = rng_.stream(RngConsumer::Placement, 1, 0);
        sample(starts, static_cast<std::size_t>(config_.robots.count), rng);
    }

    robots_.resize(starts.size());
    tables_.clear();
    robot_visited_.assign(starts.size(), std::vector<bool>(world_.cell_count(), false));
    log_.distinct_cells.assign(starts.size(), 0);
    for (std::size_t i = 0; i < starts.size(); ++i) {
        Robot& r = robots_[i];
        r.id = static_cast<RobotId>(i);
        r.position = starts[i];
        tables_.emplace_back(r.id);
        world_.place_robot(r.id, r.position);
        world_.mark_visited(r.position, r.id);
        robot_visited_[i][world_.index(r.position)] = true;
        log_.distinct_cells[i] = 1;
    }
}

std::vector<CellCoord> Simulation::positions() const {
    std::vector<CellCoord> out;
    out.reserve(robots_.size());
    for (const auto& r : robots_) out.push_back(r.position);
    return out;
}

void Simulation::set_state(Robot& robot, RobotState next) {
    if (robot.state == next) return;
    if (!is_valid_transition(robot.state, next)) {
        throw std::logic_error("invalid robot transition " + std::string(to_string(robot.state)) + " -> " +
                               std::string(to_string(next)));
    }
    if (options_.record_events) log_.state_changes.push_back({step_, robot.id, robot.state, next});
    robot.state = next;
}

TaskRecord& Simulation::task_record(const TaskKey& key) {
    auto it = task_index_.find(key);
    if (it == task_index_.end()) {
        it = task_index_.emplace(key, log_.tasks.size()).first;
        log_.tasks.push_back(TaskRecord{});
        log_.tasks.back().task = key;
    }
    return log_.tasks[it->second];
}

void Simulation::dispatch(Robot& robot, std::vector<Outgoing>& out) {
    for (auto& o : out) {
        const PacketKind kind = o.packet.kind;
        const TaskKey task = task_of(o.packet);
        bool sent = true;
        if (o.to == kNoRobot) {
            medium_.broadcast(robot.id, robot.position, std::move(o.packet), step_);
        } else {
            sent = medium_.unicast(robot.id, o.to, std::move(o.packet), step_,
                                   tables_[static_cast<std::size_t>(robot.id)]);
        }
        if (sent && task_index_.count(task)) ++task_record(task).packets[kind_index(kind)];
    }
    out.clear();
}

bool Simulation::step() {
    if (finished_) return false;
    ++step_;
    if (config_.mode == Mode::Protocol) {
        deliver_packets();
        handle_packets();
    }
    lay_pheromone();
    move_robots();
    resolve_transitions();

    for (const auto& rec : trace_buffer_) {
        if (rec.kind == PacketKind::Hello) continue;
        if (options_.record_events) log_.packets.push_back(rec);
        if (options_.packet_trace) {
            *options_.packet_trace << rec.step << ',' << to_string(rec.kind) << ',' << rec.sender << ','
                                   << (rec.receiver == kNoRobot ? std::string("broadcast")
                                                                : std::to_string(rec.receiver))
                                   << ',' << rec.coordinator << ',' << rec.task_id << '\n';
        }
    }
    trace_buffer_.clear();
    dump_step();
    check_termination();
    return !finished_;
}

void Simulation::deliver_packets() {
    const auto pos = positions();
    auto deliveries = medium_.deliver(step_, pos, rng_);
    for (auto& box : inbox_) box.clear();
    for (const auto& d : deliveries) {
        if (d.packet.kind == PacketKind::Hello) {
            tables_[static_cast<std::size_t>(d.receiver)].refresh(d.packet.origin, step_);
        }
    }
    const Step max_age = config_.net.hello_timeout_steps();
    for (auto& t : tables_) t.expire(step_, max_age);
    for (auto& d : deliveries) {
        if (d.packet.kind == PacketKind::Hello) continue;
        inbox_[static_cast<std::size_t>(d.receiver)].push_back(std::move(d));
    }

    // Senders learn about broken links and re-route recruitment requests.
    std::vector<Outgoing> out;
    for (const auto& loss : medium_.link_losses()) {
        if (loss.packet.kind != PacketKind::RFant) continue;
        Robot& sender = robots_[static_cast<std::size_t>(loss.sender)];
        const NodeView view{sender.id, sender.position, sender.state == RobotState::Forager,
                            &tables_[static_cast<std::size_t>(sender.id)]};
        reroute_rfant(sender.memory, view, loss.packet, loss.receiver, out);
        dispatch(sender, out);
    }
}

void Simulation::handle_packets() {
    std::vector<Outgoing> out;
    for (auto& robot : robots_) {
        const auto idx = static_cast<std::size_t>(robot.id);
        auto view = [&] {
            return NodeView{robot.id, robot.position, robot.state == RobotState::Forager, &tables_[idx]};
        };
        auto reply_rng = rng_.stream(RngConsumer::ReplyDecision, robot.id, step_);

        std::vector<Delivery> requests;
        for (const auto& d : inbox_[idx]) {
            const Packet& pkt = d.packet;
            switch (pkt.kind) {
                case PacketKind::RtFant:
                    if (robot.coordination) coordinator_record(*robot.coordination, pkt, step_);
                    forager_handle_rtfant(robot.memory, view(), pkt, reply_rng, out);
                    break;
                case PacketKind::RtBant:
                case PacketKind::RBant:
                    if (handle_backward_ant(robot.memory, view(), pkt, d.sender, config_.protocol, out) &&
                        robot.coordination) {
                        coordinator_record(*robot.coordination, pkt, step_);
                    }
                    break;
                case PacketKind::Lp:
                    if (handle_lp(robot.memory, view(), pkt, out) && robot.state == RobotState::Recruited &&
                        robot.assignment && robot.assignment->task == task_of(pkt)) {
                        set_state(robot, RobotState::Forager);
                        robot.assignment.reset();
                        trip_start_.erase(robot.id);
                    }
                    break;
                case PacketKind::RFant:
                    requests.push_back(d);
                    break;
                case PacketKind::Hello:
                    break;
            }
        }

        std::stable_sort(requests.begin(), requests.end(), [&](const Delivery& a, const Delivery& b) {
            const double da = squared_distance(robot.position, a.packet.target_cell);
            const double db = squared_distance(robot.position, b.packet.target_cell);
            if (da != db) return da < db;
            if (a.packet.task_id != b.packet.task_id) return a.packet.task_id < b.packet.task_id;
            return a.packet.coordinator < b.packet.coordinator;
        });
        for (const auto& d : requests) {
            const auto outcome = handle_rfant(robot.memory, view(), d.packet, out);
            if (outcome.accepted) {
                set_state(robot, RobotState::Recruited);
                Assignment a;
                a.task = task_of(d.packet);
                a.target = d.packet.target_cell;
                a.mine = world_.mine_at(a.target).value_or(-1);
                a.recruited_at = step_;
                a.initial_distance = euclidean(robot.position, a.target);
                robot.assignment = a;
                trip_start_[robot.id] = step_;
            }
        }

        if (robot.coordination && robot.state == RobotState::Coordinator) {
            const auto action = coordinator_timeout(*robot.coordination, robot.memory, view(), config_.protocol,
                                                    step_, config_.arrival_timeout(), out);
            if (action == TimeoutAction::Abandon) release_coordinator(robot);
        }
        dispatch(robot, out);
    }
    if (step_ % config_.net.hello_period == 0) emit_hello(medium_, positions(), step_);
}

void Simulation::lay_pheromone() {
    std::vector<Deposit> deposits;
    std::vector<RobotId> depositors;
    for (const auto& robot : robots_) {
        std::optional<PheromoneKind> kind;
        switch (robot.state) {
            case RobotState::Forager:
                kind = PheromoneKind::Repellent;
                break;
            case RobotState::Recruited:
                if (config_.mode == Mode::Protocol && config_.protocol.recruited_deposit) {
                    kind = PheromoneKind::Repellent;
                }
                break;
            case RobotState::Coordinator:
                if (config_.mode == Mode::Stigmergy && robot.coordination &&
                    robot.coordination->phase != CoordinatorPhase::Disarming) {
                    kind = PheromoneKind::Attractive;
                }
                break;
            default:
                break;
        }
        if (!kind) continue;
        deposits.push_back({*kind, robot.position});
        depositors.push_back(robot.id);
        if (options_.record_events) log_.deposits.push_back({step_, robot.id, *kind, robot.position});
    }

    std::vector<RngStream> streams;
    streams.reserve(depositors.size());
    for (RobotId id : depositors) streams.push_back(rng_.stream(RngConsumer::PheromoneNoise, id, step_));
    field_.step_update(deposits, [&](std::size_t i) -> NoiseSource {
        return [&streams, i] { return streams[i].uniform01(); };
    });
}

void Simulation::move_robots() {
    for (auto& robot : robots_) {
        auto rng = rng_.stream(RngConsumer::MoveTieBreak, robot.id, step_);
        const auto decision = decide_move(robot, world_, field_, move_settings_, step_, rng);
        if (decision.new_state) {
            set_state(robot, *decision.new_state);
            if (*decision.new_state == RobotState::Recruited) {
                // Stigmergy recruit: destination known only through the gradient.
                Assignment a;
                a.recruited_at = step_;
                robot.assignment = a;
                trip_start_[robot.id] = step_;
            } else {
                robot.assignment.reset();
                trip_start_.erase(robot.id);
            }
        }
        if (!decision.next) continue;
        const CellCoord from = robot.position;
        const CellCoord to = *decision.next;
        world_.move_robot(robot.id, from, to);
        world_.mark_visited(to, robot.id);
        robot.position = to;
        const auto idx = static_cast<std::size_t>(robot.id);
        if (!robot_visited_[idx][world_.index(to)]) {
            robot_visited_[idx][world_.index(to)] = true;
            ++log_.distinct_cells[idx];
        }
        if (options_.record_events) log_.moves.push_back({step_, robot.id, from, to});
    }
}

void Simulation::become_coordinator(Robot& robot, MineId mine) {
    set_state(robot, RobotState::Coordinator);
    robot.assignment.reset();
    trip_start_.erase(robot.id);
    Mine& m = world_.mine(mine);
    m.coordinator = robot.id;

    if (config_.mode == Mode::Protocol) {
        std::vector<Outgoing> out;
        const auto idx = static_cast<std::size_t>(robot.id);
        const NodeView view{robot.id, robot.position, false, &tables_[idx]};
        robot.coordination = coordinator_start(robot.memory, view, mine, m.location, config_.protocol, step_, out);
        auto& rec = task_record(robot.coordination->task);
        rec.mine = mine;
        rec.t_start = step_;
        dispatch(robot, out);
    } else {
        CoordinatorState state;
        state.task = {robot.id, robot.memory.next_task_id++};
        state.mine = mine;
        state.target = m.location;
        state.phase = CoordinatorPhase::Waiting;
        state.started = step_;
        state.last_progress = step_;
        state.needed = config_.protocol.recruits_needed();
        robot.coordination = state;
        auto& rec = task_record(state.task);
        rec.mine = mine;
        rec.t_start = step_;
    }
}

void Simulation::rest(Robot& robot) { robot.rest_until = step_ + config_.team.cooldown; }

void Simulation::release_coordinator(Robot& robot) {
    if (!robot.coordination) return;
    CoordinatorState state = *robot.coordination;
    if (config_.mode == Mode::Protocol) {
        std::vector<Outgoing> out;
        const NodeView view{robot.id, robot.position, false, &tables_[static_cast<std::size_t>(robot.id)]};
        coordinator_abandon(state, robot.memory, view, out);
        dispatch(robot, out);
    }
    world_.mine(state.mine).coordinator = kNoRobot;
    robot.memory.forget_task(state.task);
    robot.coordination.reset();
    trips_.erase(state.task);
    set_state(robot, RobotState::Forager);
    rest(robot);

    for (RobotId id : state.arrived) {
        Robot& waiter = robots_[static_cast<std::size_t>(id)];
        if (waiter.state != RobotState::Waiting) continue;
        set_state(waiter, RobotState::Forager);
        waiter.assignment.reset();
        rest(waiter);
    }
}

void Simulation::register_arrival(Robot& robot) {
    auto turn_away = [&] {
        set_state(robot, RobotState::Forager);
        robot.assignment.reset();
        trip_start_.erase(robot.id);
        rest(robot);
    };

    Robot* coordinator = nullptr;
    if (config_.mode == Mode::Protocol) {
        if (!robot.assignment || !has_arrived(robot.position, robot.assignment->target)) return;
        const RobotId cid = robot.assignment->task.coordinator;
        Robot& c = robots_[static_cast<std::size_t>(cid)];
        if (c.coordination && c.coordination->task == robot.assignment->task) coordinator = &c;
    } else {
        // Stigmergy recruits join whichever active coordinator they reach.
        bool near_any_mine = false;
        for (const auto& m : world_.mines()) {
            if (m.coordinator == kNoRobot || !has_arrived(robot.position, m.location)) continue;
            near_any_mine = true;
            Robot& c = robots_[static_cast<std::size_t>(m.coordinator)];
            if (c.coordination && c.coordination->phase != CoordinatorPhase::Disarming &&
                !c.coordination->team_complete(config_.protocol)) {
                coordinator = &c;
                break;
            }
        }
        if (!near_any_mine) return;
    }

    if (!coordinator || coordinator->coordination->phase == CoordinatorPhase::Disarming ||
        coordinator->coordination->team_complete(config_.protocol)) {
        turn_away();
        return;
    }

    CoordinatorState& state = *coordinator->coordination;
    state.arrived.insert(robot.id);
    state.last_progress = step_;
    set_state(robot, RobotState::Waiting);
    robot.arrived_at = step_;
    if (robot.assignment) {
        robot.assignment->task = state.task;
        robot.assignment->target = state.target;
        robot.assignment->mine = state.mine;
    }
    const auto start = trip_start_.count(robot.id) ? trip_start_[robot.id] : step_;
    trips_[state.task].push_back({robot.id, start, step_});
    trip_start_.erase(robot.id);
}

void Simulation::start_disarm(Robot& coordinator) {
    CoordinatorState& state = *coordinator.coordination;
    state.phase = CoordinatorPhase::Disarming;

    DisarmJob job;
    job.mine = state.mine;
    job.coordinator = coordinator.id;
    job.team.push_back(coordinator.id);
    for (RobotId id : state.arrived) job.team.push_back(id);
    job.remaining = config_.protocol.disarm_time;

    Mine& m = world_.mine(state.mine);
    world_.advance_mine(state.mine, MineStatus::Disarming);
    m.assigned.clear();
    for (RobotId id : job.team) {
        m.assigned.insert(id);
        Robot& r = robots_[static_cast<std::size_t>(id)];
        set_state(r, RobotState::Execution);
        r.execution_remaining = job.remaining;
    }

    auto& rec = task_record(state.task);
    rec.t_end = step_;
    rec.completed = true;
    rec.team = job.team;
    rec.recruits.clear();
    for (const auto& trip : trips_[state.task]) {
        if (state.arrived.count(trip.robot)) rec.recruits.push_back(trip);
    }
    trips_.erase(state.task);
    disarm_jobs_.push_back(std::move(job));
}

void Simulation::resolve_transitions() {
    // Disarm jobs started in earlier steps count down first.
    for (auto& job : disarm_jobs_) {
        --job.remaining;
        for (RobotId id : job.team) robots_[static_cast<std::size_t>(id)].execution_remaining = job.remaining;
        if (job.remaining > 0) continue;
        world_.advance_mine(job.mine, MineStatus::Disarmed);
        Mine& m = world_.mine(job.mine);
        m.coordinator = kNoRobot;
        Robot& c = robots_[static_cast<std::size_t>(job.coordinator)];
        const TaskKey task = c.coordination ? c.coordination->task : TaskKey{};
        c.coordination.reset();
        for (RobotId id : job.team) {
            Robot& r = robots_[static_cast<std::size_t>(id)];
            set_state(r, RobotState::Forager);
            r.assignment.reset();
            r.memory.forget_task(task);
        }
    }
    std::erase_if(disarm_jobs_, [](const DisarmJob& j) { return j.remaining <= 0; });

    const bool recruiting = config_.mode != Mode::ExplorationOnly;
    for (auto& robot : robots_) {
        if (robot.state != RobotState::Forager && robot.state != RobotState::Recruited) continue;
        if (auto mine = world_.detect_mine(robot.position)) {
            if (options_.record_events) log_.detections.push_back({step_, robot.id, *mine});
            if (recruiting) become_coordinator(robot, *mine);
            continue;
        }
        if (!recruiting) continue;
        if (auto mine = world_.mine_at(robot.position)) {
            const Mine& m = world_.mine(*mine);
            if (m.status == MineStatus::Detected && m.coordinator == kNoRobot && step_ >= robot.rest_until) {
                become_coordinator(robot, *mine);
                continue;
            }
        }
        if (robot.state == RobotState::Recruited) register_arrival(robot);
    }

    if (!recruiting) return;
    std::vector<Outgoing> out;
    for (auto& robot : robots_) {
        if (robot.state != RobotState::Coordinator || !robot.coordination) continue;
        auto& state = *robot.coordination;
        if (state.phase == CoordinatorPhase::Disarming) continue;
        if (config_.mode == Mode::Protocol) {
            const auto idx = static_cast<std::size_t>(robot.id);
            const NodeView view{robot.id, robot.position, false, &tables_[idx]};
            const auto action = coordinator_manage_arrivals(state, robot.memory, view, config_.protocol, step_, out);
            dispatch(robot, out);
            if (action == ArrivalAction::StartDisarm) {
                start_disarm(robot);
                continue;
            }
        } else if (state.team_complete(config_.protocol)) {
            start_disarm(robot);
            continue;
        }
        // Only a coordinator holding waiters can deadlock the swarm.
        if (!state.arrived.empty() && step_ - state.last_progress >= config_.team_patience()) {
            release_coordinator(robot);
        }
    }
}

void Simulation::check_termination() {
    const bool covered = world_.covered_cells() + world_.obstacle_count() == world_.cell_count();
    const bool mines_done = config_.mode == Mode::ExplorationOnly || world_.all_mines_disarmed();
    if (covered && mines_done) {
        finished_ = true;
        log_.complete = true;
    } else if (step_ >= config_.max_steps) {
        finished_ = true;
        log_.complete = false;
    }
    if (finished_) log_.total_steps = step_;
}

void Simulation::dump_step() {
    if (options_.robot_trace) {
        for (const auto& r : robots_) {
            *options_.robot_trace << step_ << ',' << r.id << ',' << r.position.x << ',' << r.position.y << ','
                                  << to_string(r.state) << '\n';
        }
    }
    if (options_.field_dump) {
        for (int y = 0; y < world_.height(); ++y) {
            for (int x = 0; x < world_.width(); ++x) {
                const CellCoord c{x, y};
                *options_.field_dump << step_ << ',' << x << ',' << y << ','
                                     << field_.sense(PheromoneKind::Repellent, c) << ','
                                     << field_.sense(PheromoneKind::Attractive, c) << '\n';
            }
        }
    }
}

RunLog Simulation::finish() {
    RunLog out = log_;
    if (!finished_) out.total_steps = step_;
    out.visit_counts = world_.visit_counts();
    out.obstacles.clear();
    for (std::size_t i = 0; i < world_.cell_count(); ++i) {
        const CellCoord c = world_.coord(i);
        if (world_.is_obstacle(c)) out.obstacles.push_back(c);
    }
    out.transmissions = medium_.transmissions();
    out.coverage = world_.coverage();
    out.mine_outcomes.clear();
    for (const auto& m : world_.mines()) {
        MineOutcome o;
        o.mine = m.id;
        o.location = m.location;
        o.status = m.status;
        o.team.assign(m.assigned.begin(), m.assigned.end());
        out.mine_outcomes.push_back(std::move(o));
    }
    return out;
}

RunLog run(const SimConfig& config, const RunOptions& options) {
    Simulation sim(config, options);
    while (sim.step()) {
    }
    return sim.finish();
}

}  // namespace atrc
