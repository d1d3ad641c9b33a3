import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { PlaygroundController } from "../src/controller";
import { answerView, sentenceViews } from "../src/view";
import { AtomSpec, RuleItem } from "../src/types";
import { loadRecording, recordedApi } from "./helpers";

const recording = loadRecording();
const CONDUCTING: AtomSpec = {
  subject: "nail",
  predicate: "is",
  object: "conducting",
  positive: true,
};
const BOB_GREEN: AtomSpec = {
  subject: "bob",
  predicate: "is",
  object: "green",
  positive: true,
};

function counterfactualCase() {
  return recording.corpora["counterfactuals"].cases.find(
    (c) => c.name === "plastic-metal",
  )!;
}

function chainCase() {
  return recording.corpora["attributes-demo"].cases[0];
}

function bridgeRule(controller: PlaygroundController): RuleItem {
  const item = controller.state.items.find(
    (candidate): candidate is RuleItem =>
      candidate.kind === "rule" &&
      candidate.conditions.some((c) => c.object === "plastic") &&
      candidate.conclusion.object === "metal",
  );
  expect(item).toBeDefined();
  return item!;
}

beforeEach(() => {
  vi.useFakeTimers();
});

afterEach(() => {
  vi.useRealTimers();
});

describe("counterfactual toggling", () => {
  it("flips the conduction answer within one auto-re-prove cycle", async () => {
    const api = recordedApi();
    const controller = new PlaygroundController(api);
    controller.loadPreset("counterfactuals", counterfactualCase());
    controller.setQuestion(CONDUCTING);
    await vi.advanceTimersByTimeAsync(300);

    expect(answerView(controller.state).verdict).toBe("TRUE");

    // toggle "Plastic is a metal." off: one debounce cycle later the
    // displayed answer is the service's new verdict
    controller.edit({ type: "toggle", id: bridgeRule(controller).id });
    expect(answerView(controller.state).dirty).toBe(true);
    expect(answerView(controller.state).verdict).toBeNull();
    await vi.advanceTimersByTimeAsync(300);
    expect(answerView(controller.state).verdict).toBe("FALSE");

    // and back on
    controller.edit({ type: "toggle", id: bridgeRule(controller).id });
    await vi.advanceTimersByTimeAsync(300);
    expect(answerView(controller.state).verdict).toBe("TRUE");
  });

  it("never invents an answer: displayed verdicts come from the service", async () => {
    const api = recordedApi();
    const controller = new PlaygroundController(api);
    controller.loadPreset("counterfactuals", counterfactualCase());
    controller.setQuestion(CONDUCTING);
    await vi.advanceTimersByTimeAsync(300);
    const key = controller.theoryText() + "\x00" + '("nail" "is" "conducting" "+")';
    expect(controller.state.result?.answer).toBe(recording.prove[key].answer);
    expect(api.calls.length).toBe(1);
  });

  it("undo restores the previous theory and re-proves", async () => {
    const api = recordedApi();
    const controller = new PlaygroundController(api);
    controller.loadPreset("counterfactuals", counterfactualCase());
    controller.setQuestion(CONDUCTING);
    await vi.advanceTimersByTimeAsync(300);

    controller.edit({ type: "toggle", id: bridgeRule(controller).id });
    await vi.advanceTimersByTimeAsync(300);
    expect(answerView(controller.state).verdict).toBe("FALSE");

    controller.undo();
    await vi.advanceTimersByTimeAsync(300);
    expect(answerView(controller.state).verdict).toBe("TRUE");
    expect(bridgeRule(controller).enabled).toBe(true);
  });
});

describe("critical sentence highlighting", () => {
  it("marks exactly the three chain sentences", async () => {
    const api = recordedApi();
    const controller = new PlaygroundController(api);
    controller.loadPreset("attributes-demo", chainCase());
    controller.setQuestion(BOB_GREEN);
    await vi.advanceTimersByTimeAsync(300);

    const views = sentenceViews(controller.state);
    const critical = views.filter((v) => v.highlight === "critical");
    expect(critical).toHaveLength(3);
    expect(critical.map((v) => v.sentence)).toEqual([3, 10, 13]);
    // English comes from the service's deterministic rendering (template
    // draws are seeded per request, not copied from the corpus fixture)
    expect(critical.map((v) => v.english)).toEqual([
      "Bob is big.",
      "Big people are rough.",
      "If something is rough then it is green.",
    ]);
    const rest = views.filter((v) => v.highlight === "irrelevant");
    expect(rest).toHaveLength(views.length - 3);
    expect(answerView(controller.state).criticalCount).toBe(3);
  });

  it("matches the recorded panel snapshot", async () => {
    const api = recordedApi();
    const controller = new PlaygroundController(api);
    controller.loadPreset("attributes-demo", chainCase());
    controller.setQuestion(BOB_GREEN);
    await vi.advanceTimersByTimeAsync(300);
    expect({
      answer: answerView(controller.state),
      sentences: sentenceViews(controller.state),
    }).toMatchSnapshot();
  });
});

describe("validation errors", () => {
  it("surfaces service violations inline", async () => {
    const api = recordedApi();
    api.prove = async () => {
      throw {
        error: "theory violates the rule grammar",
        violations: [{ sentence: 2, message: "rules allow at most one variable" }],
      };
    };
    const controller = new PlaygroundController(api);
    controller.loadPreset("counterfactuals", counterfactualCase());
    controller.setQuestion(CONDUCTING);
    await vi.advanceTimersByTimeAsync(300);

    const view = answerView(controller.state);
    expect(view.status).toBe("error");
    expect(view.verdict).toBeNull();
    expect(view.error).toBe("theory violates the rule grammar");
    expect(view.violations).toEqual([
      { sentence: 2, message: "rules allow at most one variable" },
    ]);
  });
});

describe("request sequencing", () => {
  it("keeps only the newest response when requests race", async () => {
    const api = recordedApi();
    const controller = new PlaygroundController(api);
    controller.loadPreset("counterfactuals", counterfactualCase());
    controller.setQuestion(CONDUCTING);

    // slow first request: toggle mid-flight, second request is faster
    api.latency = 200;
    await vi.advanceTimersByTimeAsync(300); // fires request 1 (resolves at +200)
    api.latency = 50;
    controller.edit({ type: "toggle", id: bridgeRule(controller).id });
    await vi.advanceTimersByTimeAsync(300); // fires request 2 (resolves at +50)
    await vi.advanceTimersByTimeAsync(400); // both have resolved by now

    expect(api.calls.length).toBe(2);
    expect(answerView(controller.state).verdict).toBe("FALSE");
  });

  it("stays stale-marked while proving", async () => {
    const api = recordedApi();
    api.latency = 100;
    const controller = new PlaygroundController(api);
    controller.loadPreset("counterfactuals", counterfactualCase());
    controller.setQuestion(CONDUCTING);
    await vi.advanceTimersByTimeAsync(300);
    expect(controller.state.proving).toBe(true);
    expect(answerView(controller.state).status).toBe("proving");
    await vi.advanceTimersByTimeAsync(150);
    expect(controller.state.proving).toBe(false);
    expect(answerView(controller.state).verdict).toBe("TRUE");
  });
});
