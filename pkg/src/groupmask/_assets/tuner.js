// Session view-model: pending edits, debounced pushes, revision guarding.
//
// The displayed evaluation (masked difference, resolved concentrations,
// feasibility) is only ever replaced by a service reply, never extrapolated
// locally, so the screen always shows the state of the revision the service
// last acknowledged.  At most one mutation is in flight at a time; edits
// made while one is pending are coalesced into the next push.
import { StaleRevisionError, } from "./api.js";
export class TunerModel {
    constructor(client, options = {}) {
        this.client = client;
        this.options = options;
        this.phase = "loading";
        this.state = null;
        this.revision = 0;
        this.edits = [];
        this.acked = [];
        this.alpha = 1.0;
        this.evaluation = null;
        this.error = null;
        this.timer = null;
        this.inFlight = false;
        this.pushAgain = false;
    }
    snapshot() {
        return {
            phase: this.phase,
            revision: this.revision,
            state: this.state,
            edits: [...this.edits],
            alpha: this.alpha,
            evaluation: this.evaluation,
            dirty: this.isDirty(),
            error: this.error,
        };
    }
    notify() {
        this.options.onChange?.(this.snapshot());
    }
    isDirty() {
        return (this.edits.length !== this.acked.length ||
            this.edits.some((v, i) => v !== this.acked[i]));
    }
    async load() {
        this.phase = "loading";
        this.notify();
        try {
            const state = await this.client.state();
            this.state = state;
            this.revision = state.revision;
            this.edits = [...state.a_tilde];
            this.acked = [...state.a_tilde];
            this.alpha = state.alpha;
            this.evaluation = {
                delta_tilde: state.delta_tilde,
                c1_tilde: state.c1_tilde,
                c2_tilde: state.c2_tilde,
                feasible: state.feasible,
                violations: state.violations,
            };
            this.phase = "ready";
            this.error = null;
        }
        catch (err) {
            this.phase = "error";
            this.error = String(err instanceof Error ? err.message : err);
        }
        this.notify();
    }
    /** True when the session still equals its untouched starting point, in
     * which case a commit would write an identity mask. */
    isIdentity() {
        if (!this.state)
            return true;
        return (!this.isDirty() &&
            this.acked.every((v, i) => v === this.state.a_k[i]));
    }
    editCoefficient(index, value) {
        if (!this.state || index < 0 || index >= this.edits.length) {
            throw new Error(`coefficient index ${index} out of range`);
        }
        if (!Number.isFinite(value))
            return; // ignore half-typed input
        this.edits[index] = value;
        this.schedulePush();
        this.notify();
    }
    setAlpha(value) {
        if (!Number.isFinite(value))
            return;
        this.alpha = value;
        this.schedulePush();
        this.notify();
    }
    /** Revert local edits to the acknowledged coefficients. */
    revert() {
        this.edits = [...this.acked];
        this.schedulePush();
        this.notify();
    }
    schedulePush() {
        if (this.timer !== null)
            clearTimeout(this.timer);
        const delay = this.options.debounceMs ?? 150;
        this.timer = setTimeout(() => {
            this.timer = null;
            void this.push();
        }, delay);
    }
    /** Push current edits now (used by tests and the stale-reapply button). */
    async flush() {
        if (this.timer !== null) {
            clearTimeout(this.timer);
            this.timer = null;
        }
        await this.push();
    }
    async push() {
        if (this.inFlight) {
            this.pushAgain = true;
            return;
        }
        this.inFlight = true;
        this.phase = "pushing";
        this.notify();
        try {
            const sent = [...this.edits];
            const reply = await this.client.setCoefficients(this.revision, sent, this.alpha);
            this.revision = reply.revision;
            this.acked = sent;
            this.evaluation = {
                delta_tilde: reply.delta_tilde,
                c1_tilde: reply.c1_tilde,
                c2_tilde: reply.c2_tilde,
                feasible: reply.feasible,
                violations: reply.violations,
            };
            this.phase = "ready";
            this.error = null;
        }
        catch (err) {
            if (err instanceof StaleRevisionError) {
                // another client advanced the session: adopt its revision and show
                // the conflict, keeping the local edits for an explicit reapply
                const pending = [...this.edits];
                await this.refetchKeepingEdits(pending);
                this.phase = "stale";
                this.error =
                    "the session changed in another window; review and reapply your edits";
            }
            else {
                this.phase = "error";
                this.error = String(err instanceof Error ? err.message : err);
            }
        }
        finally {
            this.inFlight = false;
        }
        this.notify();
        if (this.pushAgain) {
            this.pushAgain = false;
            await this.push();
        }
    }
    async refetchKeepingEdits(pending) {
        try {
            const state = await this.client.state();
            this.state = state;
            this.revision = state.revision;
            this.acked = [...state.a_tilde];
            this.alpha = state.alpha;
            this.evaluation = {
                delta_tilde: state.delta_tilde,
                c1_tilde: state.c1_tilde,
                c2_tilde: state.c2_tilde,
                feasible: state.feasible,
                violations: state.violations,
            };
            this.edits = pending;
        }
        catch (err) {
            this.phase = "error";
            this.error = String(err instanceof Error ? err.message : err);
        }
    }
    /** Re-send kept edits after a stale conflict. */
    async reapply() {
        if (this.phase !== "stale")
            return;
        await this.flush();
    }
    async commit() {
        if (this.timer !== null || this.inFlight || this.isDirty()) {
            throw new Error("finish pending coefficient edits before committing");
        }
        if (this.evaluation && !this.evaluation.feasible) {
            throw new Error(`cannot commit: concentrations out of range at ${this.evaluation.violations.join(", ")}`);
        }
        try {
            return await this.client.commit(this.revision);
        }
        catch (err) {
            if (err instanceof StaleRevisionError) {
                await this.refetchKeepingEdits([...this.edits]);
                this.phase = "stale";
                this.error =
                    "commit rejected: the session changed in another window; reload before committing";
                this.notify();
            }
            throw err;
        }
    }
}
