// Judge workflow: fetch the next assignment, collect the four 1-5
// ratings, submit, advance. The submit button stays disabled until all
// four dimensions are set, and a rating can be sent at most once per
// assignment from this screen.

import { ApiError, Assignment, ChallengeApi, RatingPayload } from "./api.js";

export const DIMENSIONS = [
  { key: "relevance", label: "Relevance", hint: "topics in the text match the expected ones" },
  { key: "consistency", label: "Consistency", hint: "parts of the text align with each other" },
  { key: "fluency", label: "Fluency", hint: "quality of individual sentences" },
  { key: "coherence", label: "Coherence", hint: "quality of the sequence of sentences" },
] as const;

export type DimensionKey = (typeof DIMENSIONS)[number]["key"];

export const SCALE = [1, 2, 3, 4, 5] as const;

/** Form model: values start unset; complete once all four are 1..5. */
export class RatingFormState {
  private values = new Map<DimensionKey, number>();

  constructor(public readonly assignmentId: string) {}

  set(dimension: DimensionKey, value: number): void {
    if (!Number.isInteger(value) || value < 1 || value > 5) {
      throw new RangeError(`${dimension} must be an integer in 1..5, got ${value}`);
    }
    this.values.set(dimension, value);
  }

  get(dimension: DimensionKey): number | undefined {
    return this.values.get(dimension);
  }

  isComplete(): boolean {
    return DIMENSIONS.every(({ key }) => this.values.has(key));
  }

  payload(): RatingPayload {
    if (!this.isComplete()) {
      throw new Error("all four dimensions must be set before submitting");
    }
    return {
      assignment_id: this.assignmentId,
      relevance: this.values.get("relevance")!,
      consistency: this.values.get("consistency")!,
      fluency: this.values.get("fluency")!,
      coherence: this.values.get("coherence")!,
    };
  }
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class JudgeScreen {
  private form: RatingFormState | null = null;
  private submitted = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ChallengeApi,
    private readonly judgeId: string,
  ) {}

  async load(): Promise<void> {
    this.root.textContent = "";
    this.root.append(el("p", "status", "Loading next assignment..."));
    try {
      const assignment = await this.api.nextAssignment(this.judgeId);
      this.renderAssignment(assignment);
    } catch (error) {
      if (error instanceof ApiError && error.code === "NoWorkAvailable") {
        this.renderDone();
      } else if (error instanceof ApiError) {
        this.renderError(`${error.code}: ${error.message}`, false);
      } else {
        this.renderError("Network error while fetching the next assignment.", true);
      }
    }
  }

  private renderDone(): void {
    this.root.textContent = "";
    const panel = el("div", "done-screen");
    panel.append(
      el("h2", undefined, "All done"),
      el("p", undefined, "There is nothing left for you to rate. Thank you!"),
    );
    this.root.append(panel);
  }

  private renderError(message: string, retryable: boolean): void {
    this.root.textContent = "";
    const panel = el("div", "error-screen");
    panel.append(el("p", "error-message", message));
    if (retryable) {
      const retry = el("button", "retry-button", "Retry");
      retry.addEventListener("click", () => void this.load());
      panel.append(retry);
    }
    this.root.append(panel);
  }

  private renderAssignment(assignment: Assignment): void {
    this.form = new RatingFormState(assignment.assignment_id);
    this.submitted = false;
    this.root.textContent = "";

    const screen = el("div", "rating-screen");
    const panes = el("div", assignment.reference_text ? "panes two-pane" : "panes one-pane");

    const submissionPane = el("section", "pane submission-pane");
    submissionPane.append(el("h2", undefined, "Submission"));
    const textBox = el("pre", "text-box");
    textBox.textContent = assignment.text;
    submissionPane.append(textBox);
    panes.append(submissionPane);

    if (assignment.reference_text) {
      const referencePane = el("section", "pane reference-pane");
      referencePane.append(el("h2", undefined, "Reference text"));
      const referenceBox = el("pre", "text-box");
      referenceBox.textContent = assignment.reference_text;
      referencePane.append(referenceBox);
      panes.append(referencePane);
    }
    screen.append(panes);

    const formBox = el("form", "rating-form");
    formBox.addEventListener("submit", (event) => event.preventDefault());
    const submit = el("button", "submit-button", "Submit rating");
    submit.type = "button";
    submit.disabled = true;

    for (const { key, label, hint } of DIMENSIONS) {
      const group = el("fieldset", `dimension dimension-${key}`);
      group.append(el("legend", undefined, label), el("p", "hint", hint));
      const options = el("div", "scale");
      for (const value of SCALE) {
        const optionLabel = el("label", "scale-option");
        const radio = el("input") as HTMLInputElement;
        radio.type = "radio";
        radio.name = key;
        radio.value = String(value);
        radio.addEventListener("change", () => {
          this.form!.set(key, value);
          submit.disabled = !this.form!.isComplete() || this.submitted;
        });
        optionLabel.append(radio, document.createTextNode(String(value)));
        options.append(optionLabel);
      }
      group.append(options);
      formBox.append(group);
    }

    const notice = el("p", "notice");
    submit.addEventListener("click", () => void this.submit(submit, notice));
    formBox.append(submit, notice);
    screen.append(formBox);
    this.root.append(screen);
  }

  private async submit(button: HTMLButtonElement, notice: HTMLElement): Promise<void> {
    if (!this.form || !this.form.isComplete() || this.submitted) return;
    button.disabled = true;
    try {
      await this.api.submitRating(this.form.payload());
      this.submitted = true;
      notice.textContent = "Rating saved. Loading the next text...";
      await this.load();
    } catch (error) {
      if (error instanceof ApiError && error.code === "DuplicateRating") {
        this.submitted = true; // not retryable: the assignment is already closed
        notice.textContent = "DuplicateRating: this assignment was already rated.";
      } else if (error instanceof ApiError) {
        notice.textContent = `${error.code}: ${error.message}`;
        button.disabled = false;
      } else {
        notice.textContent = "Network error; your rating was not saved. Try again.";
        button.disabled = false;
      }
    }
  }
}
