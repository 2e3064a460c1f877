"""Bundled labeled corpus: 30 instances per vulnerability class, 150 total.

Each class contributes 5 handwritten vulnerable contracts, 10 injected ones,
and 15 handwritten clean contracts. Every instance carries its class's
reference condition so any train split can be exported for fine-tuning.
Injected instances are regenerated deterministically from fixed seeds.
"""

from __future__ import annotations

from dataclasses import replace

from .corpus import CLEAN, VULNERABLE, LabeledInstance, inject
from .nodes import Span

CANONICAL_CONDITIONS = {
    "SWE-161": (
        '(node.nodeType == "UnaryOperation"'
        ' && (node.operator == "++" || node.operator == "--")'
        ' && node.subExpression.nodeType == "MemberAccess"'
        ' && node.subExpression.memberName == "length")'
        ' || (node.nodeType == "Assignment"'
        ' && (node.operator == "=" || node.operator == "+=" || node.operator == "-=")'
        ' && node.leftHandSide.nodeType == "MemberAccess"'
        ' && node.leftHandSide.memberName == "length")'),
    "SWE-134": (
        '(node.nodeType == "FunctionCallOptions"'
        ' && node.names[0] == "gas"'
        ' && node.options[0].nodeType == "Literal")'
        ' || (node.nodeType == "FunctionCall"'
        ' && node.expression.nodeType == "MemberAccess"'
        ' && node.expression.memberName == "gas"'
        ' && node.arguments[0].nodeType == "Literal")'),
    "SWE-114": (
        'node.nodeType == "Assignment"'
        ' && node.operator == "="'
        ' && node.leftHandSide.nodeType == "IndexAccess"'
        ' && node.rightHandSide.nodeType == "Identifier"'),
    "SWE-138": (
        'node.nodeType == "FunctionCall"'
        ' && node.expression.nodeType == "Identifier"'
        ' && node.expression.name == "_mint"'),
    "SWE-140": (
        'node.nodeType == "ExpressionStatement"'
        ' && node.expression.nodeType == "FunctionCall"'
        ' && node.expression.expression.nodeType == "MemberAccess"'
        ' && node.expression.expression.memberName == "send"'),
}


def _hand(instance_id: str, swe_id: str, label: str, source: str,
          needle: str | None = None) -> LabeledInstance:
    span = None
    if needle is not None:
        span = Span(source.index(needle), len(needle))
    return LabeledInstance(instance_id=instance_id, source=source,
                           swe_id=swe_id, label=label, marked_span=span,
                           expected_condition=CANONICAL_CONDITIONS[swe_id],
                           provenance="handwritten")


# -- SWE-161: writes to array length ---------------------------------------

_V161 = [
    ("swe161-v01", """pragma solidity ^0.5.0;

contract QueueDrain {
    uint256[] queue;

    function clear() public {
        queue.length = 0;
    }
}
""", "queue.length = 0;"),
    ("swe161-v02", """pragma solidity >=0.4.22 <0.6.0;

contract StackPop {
    bytes32[] entries;

    function dropLast() public {
        entries.length--;
    }
}
""", "entries.length--;"),
    ("swe161-v03", """pragma solidity ^0.5.11;

contract GrowList {
    address[] members;

    function reserveSlot() public {
        members.length++;
    }
}
""", "members.length++;"),
    ("swe161-v04", """pragma solidity ^0.5.3;

contract BatchTrim {
    uint256[] lots;

    function trim(uint256 n) public {
        lots.length -= n;
    }
}
""", "lots.length -= n;"),
    ("swe161-v05", """pragma solidity ^0.5.8;

contract Resizer {
    uint128[] cells;

    function resize(uint256 newLen) public {
        cells.length = newLen;
    }
}
""", "cells.length = newLen;"),
]

_C161 = [
    ("swe161-c01", """pragma solidity ^0.8.0;

contract QueueShrink {
    uint256[] queue;

    function dropLast() public {
        queue.pop();
    }
}
"""),
    ("swe161-c02", """pragma solidity ^0.8.0;

contract ListAppend {
    address[] members;

    function join() public {
        members.push(msg.sender);
    }
}
"""),
    ("swe161-c03", """pragma solidity ^0.8.2;

contract SizeReader {
    uint256[] lots;

    function count() public view returns (uint256) {
        uint256 n = lots.length;
        return n;
    }
}
"""),
    ("swe161-c04", """pragma solidity ^0.8.0;

contract SlotClearer {
    uint256[] cells;

    function wipe(uint256 i) public {
        delete cells[i];
    }
}
"""),
    ("swe161-c05", """pragma solidity ^0.8.1;

contract BufferMaker {
    function makeBuffer(uint256 n) public pure returns (uint256[] memory) {
        uint256[] memory buf = new uint256[](n);
        return buf;
    }
}
"""),
    ("swe161-c06", """pragma solidity ^0.8.0;

contract Summer {
    uint256[] values;

    function total() public view returns (uint256) {
        uint256 acc = 0;
        for (uint256 i = 0; i < values.length; i++) {
            acc += values[i];
        }
        return acc;
    }
}
"""),
    ("swe161-c07", """pragma solidity ^0.8.3;

contract BoundsChecker {
    bytes32[] entries;

    function read(uint256 i) public view returns (bytes32) {
        require(i < entries.length, "out of range");
        return entries[i];
    }
}
"""),
    ("swe161-c08", """pragma solidity ^0.8.0;

contract SwapRemove {
    uint256[] items;

    function removeAt(uint256 i) public {
        items[i] = items[items.length - 1];
        items.pop();
    }
}
"""),
    ("swe161-c09", """pragma solidity ^0.8.0;

contract Filler {
    uint256[] slots;

    function fill(uint256 n) public {
        for (uint256 i = 0; i < n; i++) {
            slots.push(i);
        }
    }
}
"""),
    ("swe161-c10", """pragma solidity ^0.8.4;

contract Census {
    address[] voters;

    function headcount() public view returns (uint256) {
        return voters.length;
    }
}
"""),
    ("swe161-c11", """pragma solidity ^0.8.0;

contract ByteProbe {
    function firstByte(bytes memory blob) public pure returns (bytes1) {
        require(blob.length > 0, "empty");
        return blob[0];
    }
}
"""),
    ("swe161-c12", """pragma solidity ^0.8.0;

contract CellWriter {
    uint256[] grid;

    function setCell(uint256 i, uint256 v) public {
        grid[i] = v;
    }
}
"""),
    ("swe161-c13", """pragma solidity ^0.8.2;

contract PairCheck {
    uint256[] left;
    uint256[] right;

    function balanced() public view returns (bool) {
        return left.length == right.length;
    }
}
"""),
    ("swe161-c14", """pragma solidity ^0.8.0;

contract SafePop {
    uint256[] stack;

    function tryPop() public {
        if (stack.length > 0) {
            stack.pop();
        }
    }
}
"""),
    ("swe161-c15", """pragma solidity ^0.8.1;

contract Copier {
    function head(uint256[] memory src) public pure returns (uint256) {
        require(src.length >= 1, "need one");
        return src[0];
    }
}
"""),
]

# -- SWE-134: hardcoded gas amounts ----------------------------------------

_V134 = [
    ("swe134-v01", """pragma solidity ^0.8.0;

contract PaymentRelay {
    function forward(address payable to, uint256 amount) public {
        (bool ok, ) = to.call{gas: 2300, value: amount}("");
        require(ok, "forward failed");
    }
}
""", 'to.call{gas: 2300, value: amount}("");'),
    ("swe134-v02", """pragma solidity ^0.8.4;

contract Airdropper {
    function drop(address payable user) public {
        (bool sent, ) = user.call{gas: 10000}("");
        require(sent, "call failed");
    }
}
""", 'user.call{gas: 10000}("");'),
    ("swe134-v03", """pragma solidity ^0.5.0;

contract LegacyForwarder {
    function push(address payable dest, uint256 amount) public {
        dest.call.gas(2300).value(amount)("");
    }
}
""", 'dest.call.gas(2300).value(amount)("");'),
    ("swe134-v04", """pragma solidity ^0.5.6;

contract GasCappedPing {
    function ping(address payable node) public {
        node.call.gas(50000)("");
    }
}
""", 'node.call.gas(50000)("");'),
    ("swe134-v05", """pragma solidity ^0.8.0;

contract FeePayer {
    function payFee(address miner, uint256 fee) public {
        payable(miner).transfer(fee);
    }
}
""", "payable(miner).transfer(fee);"),
]

_C134 = [
    ("swe134-c01", """pragma solidity ^0.8.0;

contract OpenForwarder {
    function forward(address payable to, uint256 amount) public {
        (bool ok, ) = to.call{value: amount}("");
        require(ok, "forward failed");
    }
}
"""),
    ("swe134-c02", """pragma solidity ^0.8.0;

contract BudgetedCall {
    uint256 gasBudget;

    function relay(address payable to, uint256 amount) public {
        (bool ok, ) = to.call{gas: gasBudget, value: amount}("");
        require(ok, "relay failed");
    }
}
"""),
    ("swe134-c03", """pragma solidity ^0.8.2;

contract GasMeter {
    uint256 public lastGas;

    function snapshot() public {
        lastGas = gasleft();
    }
}
"""),
    ("swe134-c04", """pragma solidity ^0.8.0;

contract Notifier {
    event Pinged(address node);

    function ping(address node) public {
        emit Pinged(node);
    }
}
"""),
    ("swe134-c05", """pragma solidity ^0.8.0;

contract PassThrough {
    function sweep(address payable sink) public payable {
        (bool ok, ) = sink.call{value: msg.value}("");
        require(ok, "sweep failed");
    }
}
"""),
    ("swe134-c06", """pragma solidity ^0.8.1;

contract Invoker {
    function invoke(address target, bytes memory payload) public {
        (bool ok, ) = target.call(payload);
        require(ok, "invoke failed");
    }
}
"""),
    ("swe134-c07", """pragma solidity ^0.8.0;

contract Prober {
    function probe(address target, bytes memory query) public view returns (bytes memory) {
        (bool ok, bytes memory out) = target.staticcall(query);
        require(ok, "probe failed");
        return out;
    }
}
"""),
    ("swe134-c08", """pragma solidity ^0.8.0;

contract PriceBoard {
    uint256 public quotedGasPrice;

    function quote() public {
        quotedGasPrice = tx.gasprice;
    }
}
"""),
    ("swe134-c09", """pragma solidity ^0.8.3;

contract Guarded {
    function heavyWork() public view {
        require(gasleft() > 5000, "not enough gas");
    }
}
"""),
    ("swe134-c10", """pragma solidity ^0.8.0;

contract Dispatcher {
    function dispatch(address handler) public {
        (bool ok, ) = handler.call(abi.encodeWithSignature("handle()"));
        require(ok, "dispatch failed");
    }
}
"""),
    ("swe134-c11", """pragma solidity ^0.8.0;

contract Splitter {
    function half(uint256 amount) public pure returns (uint256) {
        return amount / 2;
    }
}
"""),
    ("swe134-c12", """pragma solidity ^0.5.2;

contract LegacyOpenCall {
    function push(address payable dest, uint256 amount) public {
        dest.call.value(amount)("");
    }
}
"""),
    ("swe134-c13", """pragma solidity ^0.8.0;

contract Delegator {
    function extend(address module, bytes memory payload) public {
        (bool ok, ) = module.delegatecall(payload);
        require(ok, "extend failed");
    }
}
"""),
    ("swe134-c14", """pragma solidity ^0.8.0;

contract DepositBook {
    mapping(address => uint256) balances;

    function credit() public payable {
        balances[msg.sender] += msg.value;
    }

    function cashOut(uint256 amount) public {
        balances[msg.sender] -= amount;
        (bool ok, ) = payable(msg.sender).call{value: amount}("");
        require(ok, "cash out failed");
    }
}
"""),
    ("swe134-c15", """pragma solidity ^0.8.2;

contract Tally {
    uint256 public rounds;

    function bump() public {
        rounds = rounds + 1;
    }
}
"""),
]

# -- SWE-114: approve overwrite without zero reset -------------------------

_V114 = [
    ("swe114-v01", """pragma solidity ^0.8.0;

contract StandardToken {
    mapping(address => mapping(address => uint256)) allowed;

    function approve(address spender, uint256 value) public returns (bool) {
        allowed[msg.sender][spender] = value;
        return true;
    }
}
""", "allowed[msg.sender][spender] = value;"),
    ("swe114-v02", """pragma solidity ^0.8.0;

contract MeterToken {
    mapping(address => mapping(address => uint256)) allowance_;

    event Approval(address owner, address spender, uint256 amount);

    function approve(address spender, uint256 amount) public returns (bool) {
        allowance_[msg.sender][spender] = amount;
        emit Approval(msg.sender, spender, amount);
        return true;
    }
}
""", "allowance_[msg.sender][spender] = amount;"),
    ("swe114-v03", """pragma solidity ^0.5.0;

contract VintageToken {
    mapping(address => mapping(address => uint256)) approvals;

    function approve(address spender, uint256 value) public returns (bool) {
        approvals[msg.sender][spender] = value;
        return true;
    }
}
""", "approvals[msg.sender][spender] = value;"),
    ("swe114-v04", """pragma solidity ^0.8.2;

contract PermitBook {
    mapping(address => mapping(address => uint256)) permits;

    function approve(address agent, uint256 tokens) public {
        permits[msg.sender][agent] = tokens;
    }
}
""", "permits[msg.sender][agent] = tokens;"),
    ("swe114-v05", """pragma solidity ^0.8.0;

contract SpendCap {
    mapping(address => mapping(address => uint256)) spendLimits;

    event Approved(address spender, uint256 cap);

    function approve(address spender, uint256 cap) external {
        spendLimits[msg.sender][spender] = cap;
        emit Approved(spender, cap);
    }
}
""", "spendLimits[msg.sender][spender] = cap;"),
]

_C114 = [
    ("swe114-c01", """pragma solidity ^0.8.0;

contract ResetFirstToken {
    mapping(address => mapping(address => uint256)) allowed;

    function approve(address spender, uint256 value) public returns (bool) {
        require(allowed[msg.sender][spender] == 0 || value == 0, "reset first");
        allowed[msg.sender][spender] = value;
        return true;
    }
}
"""),
    ("swe114-c02", """pragma solidity ^0.8.0;

contract StrictToken {
    mapping(address => mapping(address => uint256)) allowed;

    function approve(address spender, uint256 value) public returns (bool) {
        require(value == 0 || allowed[msg.sender][spender] == 0, "zero it out");
        allowed[msg.sender][spender] = value;
        return true;
    }
}
"""),
    ("swe114-c03", """pragma solidity ^0.8.1;

contract AssertedToken {
    mapping(address => mapping(address => uint256)) grants;

    function approve(address spender, uint256 amount) public {
        assert(grants[msg.sender][spender] == 0 || amount == 0);
        grants[msg.sender][spender] = amount;
    }
}
"""),
    ("swe114-c04", """pragma solidity ^0.8.0;

contract TwoStepToken {
    mapping(address => mapping(address => uint256)) allowed;

    function approve(address spender, uint256 value) public returns (bool) {
        require(allowed[msg.sender][spender] == 0, "clear the old allowance");
        allowed[msg.sender][spender] = value;
        return true;
    }
}
"""),
    ("swe114-c05", """pragma solidity ^0.8.3;

contract CautiousToken {
    mapping(address => mapping(address => uint256)) quotas;

    function setQuota(address agent, uint256 amount) public {
        require(quotas[msg.sender][agent] == 0 || amount == 0, "quota in use");
        quotas[msg.sender][agent] = amount;
    }
}
"""),
    ("swe114-c06", """pragma solidity ^0.8.0;

contract AdditiveToken {
    mapping(address => mapping(address => uint256)) allowed;

    function increaseAllowance(address spender, uint256 added) public returns (bool) {
        allowed[msg.sender][spender] += added;
        return true;
    }
}
"""),
    ("swe114-c07", """pragma solidity ^0.8.0;

contract SubtractiveToken {
    mapping(address => mapping(address => uint256)) allowed;

    function decreaseAllowance(address spender, uint256 removed) public returns (bool) {
        allowed[msg.sender][spender] -= removed;
        return true;
    }
}
"""),
    ("swe114-c08", """pragma solidity ^0.8.0;

contract Revoker {
    mapping(address => mapping(address => uint256)) allowed;

    function revoke(address spender) public {
        allowed[msg.sender][spender] = 0;
    }
}
"""),
    ("swe114-c09", """pragma solidity ^0.8.0;

contract AllowanceViewer {
    mapping(address => mapping(address => uint256)) allowed;

    function allowance(address owner, address spender) public view returns (uint256) {
        return allowed[owner][spender];
    }
}
"""),
    ("swe114-c10", """pragma solidity ^0.8.0;

contract LedgerToken {
    mapping(address => uint256) balances;
    mapping(address => mapping(address => uint256)) allowed;

    function transferFrom(address from, address to, uint256 value) public returns (bool) {
        allowed[from][msg.sender] -= value;
        balances[from] -= value;
        balances[to] += value;
        return true;
    }
}
"""),
    ("swe114-c11", """pragma solidity ^0.8.0;

contract BalanceBoard {
    mapping(address => uint256) balances;

    function balanceOf(address who) public view returns (uint256) {
        return balances[who];
    }
}
"""),
    ("swe114-c12", """pragma solidity ^0.8.1;

contract Faucet {
    mapping(address => uint256) balances;

    function dripTo(address user) public {
        balances[user] += 1;
    }
}
"""),
    ("swe114-c13", """pragma solidity ^0.8.0;

contract MoveToken {
    mapping(address => uint256) balances;

    function transfer(address to, uint256 value) public returns (bool) {
        balances[msg.sender] -= value;
        balances[to] += value;
        return true;
    }
}
"""),
    ("swe114-c14", """pragma solidity ^0.8.2;

contract OwnerRegistry {
    mapping(uint256 => address) owners;

    function claim(uint256 id) public {
        owners[id] = msg.sender;
    }
}
"""),
    ("swe114-c15", """pragma solidity ^0.8.0;

contract BurnToken {
    mapping(address => uint256) balances;

    function burn(uint256 value) public {
        balances[msg.sender] -= value;
    }
}
"""),
]

# -- SWE-138: contracts that trap ether, and bare mints --------------------

_V138 = [
    ("swe138-v01", """pragma solidity ^0.8.0;

contract PiggyBank {
    uint256 public total;

    receive() external payable {
        total += msg.value;
    }
}
""", "receive() external payable {"),
    ("swe138-v02", """pragma solidity ^0.8.1;

contract DonationJar {
    mapping(address => uint256) gifts;

    function donate() public payable {
        gifts[msg.sender] += msg.value;
    }
}
""", "function donate() public payable {"),
    ("swe138-v03", """pragma solidity ^0.8.0;

contract PresaleVault {
    uint256 public raised;
    mapping(address => uint256) paid;

    function buyIn() public payable {
        paid[msg.sender] += msg.value;
        raised += msg.value;
    }
}
""", "function buyIn() public payable {"),
    ("swe138-v04", """pragma solidity ^0.8.2;

contract PotGame {
    uint256 public pot;
    address public lastPlayer;

    function play() public payable {
        pot += msg.value;
        lastPlayer = msg.sender;
    }
}
""", "function play() public payable {"),
    ("swe138-v05", """pragma solidity ^0.5.0;

contract CatchAll {
    event Got(address from, uint256 amount);

    function() external payable {
        emit Got(msg.sender, msg.value);
    }
}
""", "function() external payable {"),
]

_C138 = [
    ("swe138-c01", """pragma solidity ^0.8.0;

contract DrainableWallet {
    address payable owner;

    receive() external payable {}

    function withdraw(uint256 amount) public {
        (bool ok, ) = owner.call{value: amount}("");
        require(ok, "withdraw failed");
    }
}
"""),
    ("swe138-c02", """pragma solidity ^0.8.0;

contract RefundableSale {
    mapping(address => uint256) paid;

    function buy() public payable {
        paid[msg.sender] += msg.value;
    }

    function refund() public {
        uint256 owed = paid[msg.sender];
        paid[msg.sender] = 0;
        (bool ok, ) = payable(msg.sender).call{value: owed}("");
        require(ok, "refund failed");
    }
}
"""),
    ("swe138-c03", """pragma solidity ^0.8.1;

contract SweepableJar {
    address payable keeper;

    receive() external payable {}

    function sweep() public {
        (bool ok, ) = keeper.call{value: address(this).balance}("");
        require(ok, "sweep failed");
    }
}
"""),
    ("swe138-c04", """pragma solidity ^0.8.0;

contract EscrowSplit {
    address payable buyer;
    address payable seller;

    function fund() public payable {}

    function release(uint256 amount) public {
        (bool ok, ) = seller.call{value: amount}("");
        require(ok, "release failed");
    }
}
"""),
    ("swe138-c05", """pragma solidity ^0.8.3;

contract BountyBoard {
    mapping(uint256 => uint256) bounties;

    function post(uint256 id) public payable {
        bounties[id] += msg.value;
    }

    function award(uint256 id, address payable hunter) public {
        uint256 prize = bounties[id];
        bounties[id] = 0;
        (bool ok, ) = hunter.call{value: prize}("");
        require(ok, "award failed");
    }
}
"""),
    ("swe138-c06", """pragma solidity ^0.8.0;

contract MathHelpers {
    function clamp(uint256 x, uint256 lo, uint256 hi) public pure returns (uint256) {
        if (x < lo) {
            return lo;
        }
        if (x > hi) {
            return hi;
        }
        return x;
    }
}
"""),
    ("swe138-c07", """pragma solidity ^0.8.0;

contract NameRegistry {
    mapping(bytes32 => address) names;

    function register(bytes32 name) public {
        names[name] = msg.sender;
    }
}
"""),
    ("swe138-c08", """pragma solidity ^0.8.0;

contract ClickCounter {
    uint256 public clicks;

    function click() public {
        clicks += 1;
    }
}
"""),
    ("swe138-c09", """pragma solidity ^0.8.1;

contract NoteBoard {
    string public note;

    function setNote(string memory text) public {
        note = text;
    }
}
"""),
    ("swe138-c10", """pragma solidity ^0.8.0;

contract Ownable {
    address public owner;

    function handOver(address next) public {
        require(msg.sender == owner, "not owner");
        owner = next;
    }
}
"""),
    ("swe138-c11", """pragma solidity ^0.8.0;

contract PauseSwitch {
    bool public paused;

    function setPaused(bool state) public {
        paused = state;
    }
}
"""),
    ("swe138-c12", """pragma solidity ^0.8.2;

contract AuditTrail {
    event Acted(address actor, bytes32 action);

    function act(bytes32 action) public {
        emit Acted(msg.sender, action);
    }
}
"""),
    ("swe138-c13", """pragma solidity ^0.8.0;

contract Roster {
    address[] crew;

    function enlist() public {
        crew.push(msg.sender);
    }
}
"""),
    ("swe138-c14", """pragma solidity ^0.8.0;

contract RateCard {
    function feeFor(uint256 amount) public pure returns (uint256) {
        return amount * 3 / 100;
    }
}
"""),
    ("swe138-c15", """pragma solidity ^0.8.1;

contract Timestamped {
    uint256 public lastSeen;

    function checkIn() public {
        lastSeen = block.timestamp;
    }
}
"""),
]

# -- SWE-140: send with the result dropped ---------------------------------

_V140 = [
    ("swe140-v01", """pragma solidity ^0.8.0;

contract Payout {
    function pay(address payable winner, uint256 prize) public {
        winner.send(prize);
    }
}
""", "winner.send(prize);"),
    ("swe140-v02", """pragma solidity ^0.8.0;

contract BatchRefund {
    address payable[] recipients;
    uint256[] amounts;

    function refundAll() public {
        for (uint256 i = 0; i < recipients.length; i++) {
            recipients[i].send(amounts[i]);
        }
    }
}
""", "recipients[i].send(amounts[i]);"),
    ("swe140-v03", """pragma solidity ^0.5.0;

contract OldRefunder {
    function refund(uint256 overpaid) public {
        msg.sender.send(overpaid);
    }
}
""", "msg.sender.send(overpaid);"),
    ("swe140-v04", """pragma solidity ^0.8.2;

contract GrantDesk {
    address beneficiary;

    function disburse(uint256 balanceDue) public {
        payable(beneficiary).send(balanceDue);
    }
}
""", "payable(beneficiary).send(balanceDue);"),
    ("swe140-v05", """pragma solidity ^0.8.0;

contract NetSettle {
    address payable treasury;

    function settle(uint256 total, uint256 fee) public {
        treasury.send(total - fee);
    }
}
""", "treasury.send(total - fee);"),
]

_C140 = [
    ("swe140-c01", """pragma solidity ^0.8.0;

contract CheckedPayout {
    function pay(address payable winner, uint256 prize) public {
        bool ok = winner.send(prize);
        require(ok, "send failed");
    }
}
"""),
    ("swe140-c02", """pragma solidity ^0.8.0;

contract CheckedRefund {
    function refund(address payable buyer, uint256 overpaid) public {
        bool sent = buyer.send(overpaid);
        require(sent, "refund failed");
    }
}
"""),
    ("swe140-c03", """pragma solidity ^0.8.1;

contract CheckedGrant {
    function disburse(address payable grantee, uint256 amount) public {
        bool delivered = grantee.send(amount);
        require(delivered, "grant failed");
    }
}
"""),
    ("swe140-c04", """pragma solidity ^0.8.0;

contract BranchingPayer {
    uint256 public failures;

    function pay(address payable to, uint256 amount) public {
        bool ok = to.send(amount);
        if (!ok) {
            failures += 1;
        }
    }
}
"""),
    ("swe140-c05", """pragma solidity ^0.8.0;

contract RevertingPayer {
    function pay(address payable to, uint256 amount) public {
        if (!to.send(amount)) {
            revert("send failed");
        }
    }
}
"""),
    ("swe140-c06", """pragma solidity ^0.8.2;

contract StrictSettle {
    function settle(address payable party, uint256 owed) public {
        if (!party.send(owed)) {
            revert("settlement failed");
        }
    }
}
"""),
    ("swe140-c07", """pragma solidity ^0.8.0;

contract InlineChecked {
    function pay(address payable to, uint256 amount) public {
        require(to.send(amount), "send failed");
    }
}
"""),
    ("swe140-c08", """pragma solidity ^0.8.0;

contract InlineRefund {
    function refund(address payable buyer, uint256 amount) public {
        require(buyer.send(amount), "refund failed");
    }
}
"""),
    ("swe140-c09", """pragma solidity ^0.8.3;

contract InlineAward {
    function award(address payable hunter, uint256 prize) public {
        require(hunter.send(prize), "award failed");
    }
}
"""),
    ("swe140-c10", """pragma solidity ^0.8.0;

contract CallPayer {
    function pay(address payable to, uint256 amount) public {
        (bool ok, ) = to.call{value: amount}("");
        require(ok, "pay failed");
    }
}
"""),
    ("swe140-c11", """pragma solidity ^0.8.0;

contract CallRefunder {
    function refund(address payable buyer, uint256 amount) public {
        (bool ok, ) = buyer.call{value: amount}("");
        require(ok, "refund failed");
    }
}
"""),
    ("swe140-c12", """pragma solidity ^0.8.1;

contract CallSettler {
    function settle(address payable party, uint256 owed) public {
        (bool ok, ) = party.call{value: owed}("");
        require(ok, "settle failed");
    }
}
"""),
    ("swe140-c13", """pragma solidity ^0.8.0;

contract IouBook {
    mapping(address => uint256) owed;

    function recordDebt(address creditor, uint256 amount) public {
        owed[creditor] += amount;
    }
}
"""),
    ("swe140-c14", """pragma solidity ^0.8.0;

contract LoggedPayer {
    event PayFailed(address to, uint256 amount);

    function pay(address payable to, uint256 amount) public {
        bool ok = to.send(amount);
        if (!ok) {
            emit PayFailed(to, amount);
        }
    }
}
"""),
    ("swe140-c15", """pragma solidity ^0.8.2;

contract Netting {
    function net(uint256 credit, uint256 debit) public pure returns (uint256) {
        if (credit > debit) {
            return credit - debit;
        }
        return 0;
    }
}
"""),
]

# -- injected instances ----------------------------------------------------

_INJECT_SNIPPETS = {
    "SWE-161": ("data.length--;", "data.length = 0;", "data.length++;",
                "data.length -= 1;"),
    "SWE-134": (
        '(bool ok, ) = target.call{gas: 2300, value: amount}("");\n'
        'require(ok, "relay failed");',
        'target.call{gas: 10000, value: amount}("");',
        '(bool ok, ) = target.call{gas: 40000}("");\n'
        'require(ok, "ping failed");'),
    "SWE-114": ("allowed[msg.sender][spender] = value;",
                "allowed[msg.sender][spender] = amount;"),
    "SWE-138": ("_mint(msg.sender, amount);", "_mint(spender, value);",
                "_mint(last, amount);"),
    "SWE-140": ("target.send(amount);", "target.send(value);",
                "target.send(amount - 1);",
                "uint256 half = amount / 2;\ntarget.send(half);"),
}

_INJECT_SEED_BASE = {
    "SWE-161": 16100,
    "SWE-134": 13400,
    "SWE-114": 11400,
    "SWE-138": 13800,
    "SWE-140": 14000,
}


def _injected(swe_id: str) -> list[LabeledInstance]:
    snippets = _INJECT_SNIPPETS[swe_id]
    base = _INJECT_SEED_BASE[swe_id]
    prefix = swe_id.lower().replace("-", "")
    out = []
    for k in range(1, 11):
        instance = inject(snippets[(k - 1) % len(snippets)], base + k,
                          swe_id=swe_id,
                          instance_id=f"{prefix}-i{k:02d}")
        out.append(replace(instance,
                           expected_condition=CANONICAL_CONDITIONS[swe_id]))
    return out


def _class_instances(swe_id: str, vulnerable, clean) -> list[LabeledInstance]:
    out = [_hand(iid, swe_id, VULNERABLE, src, needle)
           for iid, src, needle in vulnerable]
    out.extend(_injected(swe_id))
    out.extend(_hand(iid, swe_id, CLEAN, src) for iid, src in clean)
    return out


_CACHE: list[LabeledInstance] | None = None


def bundled_corpus() -> list[LabeledInstance]:
    global _CACHE
    if _CACHE is None:
        instances = []
        instances += _class_instances("SWE-161", _V161, _C161)
        instances += _class_instances("SWE-134", _V134, _C134)
        instances += _class_instances("SWE-114", _V114, _C114)
        instances += _class_instances("SWE-138", _V138, _C138)
        instances += _class_instances("SWE-140", _V140, _C140)
        _CACHE = instances
    return list(_CACHE)


def class_instances(swe_id: str) -> list[LabeledInstance]:
    return [i for i in bundled_corpus() if i.swe_id == swe_id]
