#include "mock_lexicon.hpp"

namespace campsim::mock_lexicon {

const Pool& surnames() {
  static const Pool p{"王", "李", "张", "刘", "陈", "杨", "黄", "赵", "吴", "周", "徐", "孙", "马", "朱", "胡",
                      "郭", "何", "高", "林", "罗", "郑", "梁", "谢", "宋", "唐", "许", "韩", "冯", "邓", "曹",
                      "彭", "曾", "萧", "田", "董", "潘", "袁", "蔡", "蒋", "余"};
  return p;
}

const Pool& given_names() {
  static const Pool p{"子涵", "雨萱", "浩然", "思远", "欣怡", "梓轩", "一诺", "佳琪", "俊杰", "若曦", "晨阳",
                      "雅婷", "嘉懿", "宇航", "诗雨", "明哲", "可欣", "泽宇", "静怡", "博文", "婉清", "天佑",
                      "语桐", "昊天", "梦瑶", "子墨", "安然", "皓轩", "芷若", "书航", "清妍", "逸凡", "沐晴",
                      "景行", "知夏", "承泽", "念慈", "予安", "星辰", "亦舒"};
  return p;
}

const Pool& mbti_types() {
  static const Pool p{"INFJ", "INFP", "INTJ", "INTP", "ISFJ", "ISFP", "ISTJ", "ISTP",
                      "ENFJ", "ENFP", "ENTJ", "ENTP", "ESFJ", "ESFP", "ESTJ", "ESTP"};
  return p;
}

const Pool& traits() {
  static const Pool p{
      "做事认真细致但容易钻牛角尖",
      "外表开朗，内心却敏感多虑",
      "责任感强，习惯把别人的期待放在自己前面",
      "好奇心旺盛，兴趣广泛却难以坚持",
      "情绪起伏明显，喜怒都写在脸上",
      "追求完美，对自己的失误格外苛刻",
      "慢热内敛，与陌生人相处时容易紧张",
      "独立自主，不太愿意向别人示弱",
      "善于照顾他人情绪，却常常忽视自己",
      "思维活跃，常常在深夜反复回想白天的细节",
      "自尊心强，很在意同龄人的评价",
      "行动力强但计划性不足，经常临时抱佛脚",
      "温和随和，遇到冲突时倾向于退让",
      "理性冷静，习惯用逻辑压下情绪",
      "想象力丰富，容易把事情往坏处设想",
      "竞争意识强，总拿自己和室友作比较",
      "重视友情，对被排斥的信号非常警觉",
      "自律性较好，但一旦节奏被打乱就会慌张",
      "幽默健谈，用玩笑掩饰真实的不安",
      "谨慎保守，面对选择时反复犹豫",
      "共情能力强，容易被他人的负面情绪感染",
      "目标感明确，但对失败的承受力偏弱",
      "表达欲不强，更愿意把心事写在日记里",
      "依赖熟悉的环境，对变化适应较慢",
  };
  return p;
}

const Pool& coping_styles() {
  static const Pool p{
      "习惯独自消化，把烦恼压在心里",
      "会通过长跑和打球来发泄情绪",
      "常常熬夜刷手机来逃避压力",
      "倾向于向一两位好友倾诉",
      "会列清单、做计划来找回掌控感",
      "压力大时暴饮暴食或者干脆不吃饭",
      "喜欢戴着耳机听歌、一个人在操场散步",
      "容易拖延，直到截止日期前才集中爆发",
      "会在社交平台上发隐晦的动态",
      "偶尔给家里打电话，却报喜不报忧",
      "用高强度学习转移注意力",
      "会去图书馆角落安静地坐一整天",
      "通过画画和写作整理思绪",
      "选择回避，尽量不去想让人烦心的事",
      "主动查阅心理学文章试图自我调节",
      "压力大时会反复确认消息、难以入睡",
  };
  return p;
}

const Pool& hometowns() {
  static const Pool p{"西北县城", "江南小镇", "东北老工业城市", "西南山区", "沿海省会", "中原农村", "华南城中村",
                      "内蒙古牧区", "北方地级市", "长江边的小城", "海岛渔村", "一线城市郊区", "川渝地区",
                      "云贵高原小镇", "黄土高原村庄"};
  return p;
}

const Pool& family_structures() {
  static const Pool p{"单亲", "三代同堂的", "重组", "双职工", "务农", "个体经营", "独生子女", "多子女",
                      "父母长期外出务工的", "军人"};
  return p;
}

const Pool& parent_situations() {
  static const Pool p{
      "父亲对成绩要求严格，母亲则总是报喜不报忧",
      "父母关系紧张，经常在电话里争吵",
      "母亲身体不好，家里大小事都压在父亲身上",
      "父母对其寄予厚望，希望其考上名校研究生",
      "父亲常年在外地打工，与家人聊天很少",
      "母亲控制欲较强，每天都要询问行程",
      "父母开明但不太懂大学里的事情",
      "爷爷奶奶带大，和父母之间有些疏远",
      "家里刚经历生意失败，气氛压抑",
      "哥哥姐姐都很优秀，常被拿来比较",
      "父母离异后各自组建了新家庭",
      "家人希望其毕业后尽快回老家考编",
  };
  return p;
}

const Pool& economic_situations() {
  static const Pool p{
      "家庭经济较为拮据，依靠助学贷款完成学业",
      "经济条件中等，但生活费需要精打细算",
      "家境宽裕，却很少获得情感上的回应",
      "需要勤工俭学补贴生活费",
      "弟弟妹妹还在读书，家里开销很大",
      "获得过国家助学金，但很怕被同学知道",
      "家里为了供读书借过一笔钱",
      "父母退休金有限，医药费支出逐年增加",
  };
  return p;
}

const Pool& social_support() {
  static const Pool p{
      "在学校里只有一位高中同学可以说心里话",
      "和室友关系表面和谐，实际交流很少",
      "参加了摄影社团，但一直没有融入核心圈子",
      "有一位关系稳定的恋人，但异地交流不畅",
      "与辅导员接触不多，不知道该向谁求助",
      "班级里朋友不少，却很少谈及真实感受",
      "导师比较忙，平时主要靠师兄师姐指导",
      "在网络游戏里有几位聊得来的朋友",
      "学生会工作让其认识了很多人，但彼此都很忙",
      "刚和好朋友闹僵，最近常常一个人吃饭",
      "老乡会的学长偶尔会关心一下近况",
      "宿舍里有一位室友很照顾人，是主要的倾诉对象",
  };
  return p;
}

const Pool& conflicts(StressDomain d) {
  static const std::map<StressDomain, Pool> m{
      {StressDomain::Academic,
       {"既想保持优秀的成绩证明自己，又害怕一次失败就让所有努力化为泡影。",
        "渴望在专业上找到兴趣，却被绩点排名裹挟着不敢停下来。",
        "一方面想放弃不擅长的课程，另一方面担心辜负父母的付出。",
        "希望获得保研资格，却越来越怀疑自己是否真的有能力读下去。",
        "害怕在课堂上表达观点，又不甘心一直做沉默的旁观者。",
        "明知道需要休息，却总觉得停下来就会被同学远远甩在后面。"}},
      {StressDomain::Interpersonal,
       {"渴望被室友接纳，又害怕表达真实想法后被孤立。",
        "想结束一段让自己疲惫的恋爱关系，却担心离开后再也没有人在乎自己。",
        "希望拥有亲密的朋友，却总在关系变近时本能地后退。",
        "想在社团里争取表现机会，又怕被说成爱出风头。",
        "不愿再迁就别人，可一拒绝就感到强烈的内疚。",
        "想修复与好友的裂痕，却不知道先开口是不是就意味着认输。"}},
      {StressDomain::Career,
       {"想追求自己热爱的方向，却担心它无法带来稳定的收入。",
        "在考研和就业之间摇摆不定，害怕任何一个选择都会后悔。",
        "看到同学纷纷拿到实习，既焦虑又不知道自己真正想要什么。",
        "家人希望其考公务员，自己却更想去大城市闯一闯。",
        "害怕简历投出去石沉大海，于是迟迟不敢迈出第一步。",
        "想证明自己不比名校学生差，又在一次次面试失败后怀疑自我。"}},
      {StressDomain::FamilyFinance,
       {"想减轻家里的经济负担，又不愿因打工耽误学业。",
        "渴望摆脱父母的控制，却又离不开家里的经济支持。",
        "觉得自己是家庭唯一的希望，害怕让父母失望。",
        "想告诉父母自己的真实处境，又怕他们担心或者责备。",
        "在同学的消费圈子里感到自卑，却不愿承认家境上的差距。",
        "父母离异后夹在两边之间，不知道该站在哪一方。"}},
      {StressDomain::Health,
       {"想把失眠当作小事撑过去，又担心身体真的出了问题。",
        "明白焦虑发作需要求助，却害怕被贴上心理有问题的标签。",
        "想通过节食控制体重获得自信，又为反复暴食感到羞愧。",
        "希望身体快点恢复跟上课程，却总觉得力不从心。",
        "害怕别人看出自己的情绪低落，只好每天强打精神。",
        "想规律作息，却总在深夜被各种担忧拉回清醒。"}},
  };
  return m.at(d);
}

const Pool& event_templates(StressDomain d) {
  static const std::map<StressDomain, Pool> m{
      {StressDomain::Academic,
       {"{course}期中考试只考了{amount}分，在班里排名靠后",
        "{course}的小组作业被组员临时甩锅，只能熬夜一个人赶完",
        "毕业论文开题答辩被导师当众指出问题，需要重新选题",
        "{course}期末考试临近，复习进度严重落后",
        "收到教务处的学业预警通知，{course}有挂科风险",
        "实验课数据反复出错，被助教要求重做{course}实验",
        "保研综合测评排名公布，自己差了{amount}名没能进入名单",
        "在{place}通宵复习后仍然在{course}测验中大脑一片空白"}},
      {StressDomain::Interpersonal,
       {"和室友{person}因为作息问题在宿舍大吵一架",
        "发现{person}在班级群外另建了小群，自己没有被拉进去",
        "和恋人{person}因为异地问题冷战了一周",
        "社团换届选举落选，感觉被{person}针对",
        "在{place}吃饭时听到同学议论自己，内心很受伤",
        "好友{person}突然疏远，消息也不再回复",
        "宿舍卫生分工引发矛盾，{person}当众指责自己",
        "被{person}拒绝了告白，之后在课堂上相遇非常尴尬"}},
      {StressDomain::Career,
       {"投递{company}的暑期实习简历后迟迟没有回音",
        "在{company}的群面环节表现紧张，被直接淘汰",
        "考研报名截止日临近，仍然无法决定是否报考",
        "实习单位{company}要求每天加班，与课程时间严重冲突",
        "参加校园招聘会时发现心仪岗位都要求硕士学历",
        "{person}拿到了{company}的录用通知，自己却还没有方向",
        "导师建议转向更热门的研究方向，与自己的兴趣不符",
        "职业规划课作业让自己意识到对未来毫无头绪"}},
      {StressDomain::FamilyFinance,
       {"这个月生活费只剩{amount}元，不得不向同学借钱",
        "{relative}突然住院，家里让自己先不要回去",
        "父母在电话里再次争吵，{relative}要求自己表态",
        "助学贷款材料被退回，需要重新开具家庭经济证明",
        "家里的小店经营困难，{relative}提出让自己休学打工",
        "勤工助学岗位被取消，生活费出现缺口",
        "{relative}催促自己毕业后回老家考编，双方争执不下",
        "得知家里为了学费又借了一笔钱，内疚感很强"}},
      {StressDomain::Health,
       {"连续一周凌晨三点后才能入睡，白天在{place}频繁走神",
        "在{course}课堂上突然心慌手抖，不得不提前离开教室",
        "体检报告显示{symptom}，担心影响学业",
        "因为压力大开始暴饮暴食，体重明显变化",
        "{symptom}反复发作，去校医院检查却查不出明确原因",
        "在{place}排队时突然呼吸急促，出现惊恐发作",
        "长期不吃早饭导致胃痛，仍然坚持熬夜赶作业",
        "情绪持续低落两周，对原本喜欢的事情提不起兴趣"}},
  };
  return m.at(d);
}

const std::map<std::string, Pool>& event_slots() {
  static const std::map<std::string, Pool> m{
      {"course",
       {"高等数学", "大学物理", "有机化学", "微观经济学", "数据结构", "线性代数", "解剖学", "中国古代文学",
        "概率论", "会计学原理", "素描基础", "电路分析", "大学英语", "病理学", "法理学", "统计学"}},
      {"person",
       {"小杨", "阿哲", "小林", "婷婷", "老周", "小雨", "浩子", "晓晓", "阿凯", "小敏", "思思", "大伟"}},
      {"place",
       {"图书馆", "自习室", "食堂", "宿舍楼下", "实验楼", "操场", "教学楼走廊", "校医院", "快递站", "社团活动室"}},
      {"company",
       {"一家互联网大厂", "本地的设计工作室", "某咨询公司", "一家三甲医院", "一家券商", "某新能源企业",
        "一家外贸公司", "某游戏公司"}},
      {"relative", {"父亲", "母亲", "奶奶", "爷爷", "外婆", "舅舅", "姐姐", "哥哥"}},
      {"symptom", {"心率偏快", "轻度贫血", "甲状腺指标异常", "持续头痛", "胃炎", "视力下降", "偏头痛", "血压偏低"}},
      {"amount", {"52", "58", "61", "200", "150", "3", "5", "300"}},
  };
  return m;
}

const Pool& impacts() {
  static const Pool p{"焦虑", "自我怀疑", "羞愧", "无助", "愤怒", "委屈", "失落", "紧张不安", "孤独",
                      "内疚", "迷茫", "挫败感", "烦躁", "恐惧", "压抑", "沮丧", "疲惫", "自责"};
  return p;
}

const Pool& student_openers() {
  static const Pool p{"老师，我想跟您聊聊最近的事。", "老师好，我这几天一直挺难受的。", "老师，我又来了。",
                      "不好意思又来打扰您。", "老师，我有件事憋在心里好久了。", "我也不知道该从哪儿说起。",
                      "老师，这周发生了一件让我很崩溃的事。", "其实我犹豫了很久要不要来。"};
  return p;
}

const Pool& student_feelings() {
  static const Pool p{
      "我一想到这件事心里就堵得慌",
      "晚上躺在床上脑子停不下来",
      "我觉得自己特别没用",
      "我不敢跟家里说，怕他们担心",
      "感觉所有人都比我过得好",
      "我表面上装作没事，其实快撑不住了",
      "有时候会突然想哭，但又哭不出来",
      "我越想越觉得是自己的问题",
      "这几天连饭都吃不下",
      "我整个人都提不起劲",
      "我一直在想是不是我哪里做错了",
      "我怕再这样下去会影响期末",
  };
  return p;
}

const Pool& student_followups() {
  static const Pool p{
      "您说得对，我确实一直在回避这个问题。",
      "嗯……我好像从来没有这样想过。",
      "可是我真的很难做到不在意别人的看法。",
      "其实我最怕的是让爸妈失望。",
      "我试过您上次说的方法，有一点点帮助。",
      "说出来之后心里好像轻松了一些。",
      "但我还是觉得自己不够好。",
      "我也知道要休息，可是停下来会更焦虑。",
      "我想起以前高中的时候也有过类似的感觉。",
      "如果我跟室友坦白，她会不会觉得我矫情？",
      "我不知道下一步该怎么做。",
      "这件事其实和之前的事情有点联系。",
  };
  return p;
}

const Pool& student_closers() {
  static const Pool p{"您觉得我该怎么办？", "这样正常吗？", "我是不是想太多了？", "我还能做些什么呢？",
                      "您能帮我理一理吗？", "我真的不知道该怎么面对。", "我想试着改变一下。", "谢谢您愿意听我说。"};
  return p;
}

const Pool& counselor_empathy() {
  static const Pool p{
      "谢谢你愿意把这些告诉我，我能感受到这段时间你承受了很多。",
      "听你这样描述，我能体会到那种被压得喘不过气的感觉。",
      "你能主动来聊这些，本身就需要很大的勇气。",
      "我注意到你说这些的时候声音有些发紧，这件事对你影响很大。",
      "这种反复自责的感觉一定很消耗你。",
      "在这样的处境下感到难过和委屈，是非常自然的反应。",
      "我听到了你的担心，也听到了你一直在努力撑着。",
      "先不用急着给自己下结论，我们可以慢慢来。",
  };
  return p;
}

const Pool& counselor_reflections() {
  static const Pool p{
      "听起来，{impact}是你现在最强烈的感受。",
      "你提到{impact}，这种情绪似乎在这件事之后变得更明显了。",
      "我理解为：这件事让你感到{impact}，同时也触碰到了你一直在意的东西。",
      "在你的描述里，我听到了很多{impact}，也听到了你对自己的高要求。",
  };
  return p;
}

const Pool& counselor_questions() {
  static const Pool p{
      "当时发生这件事的时候，你脑海里第一个冒出来的想法是什么？",
      "你愿意多说一点，这件事里最让你难受的是哪一部分吗？",
      "这种感觉通常会在什么时候最强烈？",
      "如果用一到十分来形容现在的压力，你会打几分？",
      "身边有没有哪个人是你觉得可以稍微依靠一下的？",
      "你以前遇到类似的困难时，是怎么一步步走过来的？",
      "你说的“不够好”，具体是和谁相比、用什么标准在衡量呢？",
      "这件事和你之前提到的那些担心之间，你觉得有联系吗？",
      "如果你最好的朋友遇到同样的事，你会对他说些什么？",
      "最近的睡眠和饮食情况怎么样？",
  };
  return p;
}

const Pool& counselor_guidance() {
  static const Pool p{
      "我们可以先从一件小事开始，比如这周给自己安排固定的休息时间。",
      "也许可以试着把担心写下来，分清哪些是已经发生的，哪些只是想象中的。",
      "如果愿意的话，可以考虑和辅导员或任课老师沟通一下目前的情况。",
      "睡前半小时放下手机，做几次深呼吸，看看身体会不会放松一些。",
      "不必一次解决所有问题，先选一个最想改变的地方就好。",
      "你可以留意一下这周情绪起伏的时刻，下次我们一起看看其中的规律。",
      "学校心理中心也有团体辅导活动，如果你感兴趣可以去了解一下。",
      "和信任的朋友聊一聊，也许会发现你并不是一个人在面对。",
  };
  return p;
}

const Pool& counselor_memory_links() {
  static const Pool p{
      "我记得上次我们谈到“{focus}”，这次的事情似乎和它有些呼应。",
      "结合之前你说过的“{event}”，我能理解为什么这次你的反应会这么强烈。",
      "上一次咨询结束时，你还在为“{issue}”而困扰，现在这部分有变化吗？",
  };
  return p;
}

const Pool& counselor_wrapups() {
  static const Pool p{
      "今天我们一起梳理了这件事带给你的感受，也看到了你已经在做的努力。",
      "我们先在这里做个小结：你的情绪是有原因的，而你也有能力慢慢调整。",
      "回顾今天的谈话，你已经开始把模糊的担心变成可以讨论的问题了。",
  };
  return p;
}

const Pool& conflict_statuses() {
  static const Pool p{"核心冲突被当前事件再次激活，情绪反应强烈", "开始意识到冲突的来源，但仍难以接纳自己",
                      "冲突有所松动，能够从不同角度看待问题", "冲突持续存在，并与新的压力事件相互叠加",
                      "在咨询中首次正面谈及核心冲突", "对冲突的觉察加深，出现尝试改变的意愿"};
  return p;
}

const Pool& counseling_foci() {
  static const Pool p{"情绪识别与表达", "自我评价与认知重构", "压力来源梳理", "睡眠与作息调整",
                      "人际边界的建立", "家庭期待与自我需求的平衡", "学业规划与时间管理", "求助资源的连接"};
  return p;
}

const Pool& unresolved_issues() {
  static const Pool p{"如何与家人沟通真实感受", "对未来方向的不确定感仍然很强", "与室友的关系尚未修复",
                      "失眠问题仍在持续", "对失败的过度担忧", "是否需要寻求进一步的医疗帮助",
                      "经济压力带来的长期焦虑", "在团体中感到被排斥的体验"};
  return p;
}

}  // namespace campsim::mock_lexicon
